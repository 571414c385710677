#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "edonk/bits.hpp"
#include "edonk/gf2m.hpp"
#include "edonk/hash.hpp"
#include "edonk/params.hpp"
#include "edonk/subspace.hpp"

namespace edonk::kem {

using gf2m::Element;

/// Validated parameters together with their field and hash. Immutable; share freely.
class Scheme {
 public:
  explicit Scheme(Params params);

  const Params& params() const { return params_; }
  const gf2m::Field& field() const { return field_; }
  const Hash& hash() const { return hash_; }

  /// Hash of the concatenated encodings of the entries of c.
  Digest hash_word(std::span<const Element> c) const;
  /// split(Hash(u || v)): the first two element-sized chunks of the digest.
  std::pair<Element, Element> chain_step(const Element& u, const Element& v) const;
  std::pair<Element, Element> split(const Digest& d) const;
  /// Hash(first || second || hc).
  Digest bind(const Element& first, const Element& second, std::span<const std::uint8_t> hc) const;
  /// bind(first, second, hc) == expected, without allocating.
  bool bind_matches(const Element& first, const Element& second, std::span<const std::uint8_t> hc,
                    std::span<const std::uint8_t> expected) const;

 private:
  Params params_;
  gf2m::Field field_;
  Hash hash_;
};

struct SecretKey {
  Element a;
  Element b;
  BitMatrix p;  // N x N, orthogonal
  BitMatrix h;  // R x N

  friend bool operator==(const SecretKey&, const SecretKey&) = default;
};

/// Compressed public key: the basis (c g_1..c g_nu, d g_1..d g_nu) and, for every entry of Gpub,
/// its 2nu coordinates in that basis. coeffs is K x (N * 2nu); entry (k, j) occupies columns
/// [j * 2nu, (j + 1) * 2nu).
struct PublicKey {
  std::vector<Element> basis_cd;
  BitMatrix coeffs;

  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct KeyPair {
  PublicKey pk;
  SecretKey sk;
};

/// Intermediate keygen values, exposed for tests and self-checks.
struct KeyGenTrace {
  std::vector<Element> g_tilde;
  gf2m::Matrix g;
  gf2m::Matrix g_pub;
  Element c;
  Element d;
  unsigned attempts = 0;
};

struct Ciphertext {
  gf2m::Vector c;
  Digest tag;

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

struct SharedSecret {
  Digest bytes;

  friend bool operator==(const SharedSecret&, const SharedSecret&) = default;
};

struct ErrorChain {
  std::vector<Element> e_tilde;  // length L
  Element s0;
  Element s1;
};

struct Encapsulation {
  Ciphertext ct;
  SharedSecret ss;
  gf2m::Vector message;
  gf2m::Vector error;
  ErrorChain chain;
};

/// Entrywise 0 -> u, 1 -> v. Throws if u == v or either is zero.
gf2m::Matrix substitute(const gf2m::Field& field, const BitMatrix& p, const Element& u, const Element& v);

/// (c, d) = (a, b) / (a^2 + b^2).
std::pair<Element, Element> dual_pair(const gf2m::Field& field, const Element& a, const Element& b);

/// Any "sample until the invariant holds" loop gives up after this many attempts.
inline constexpr unsigned kMaxAttempts = 100;

KeyPair keygen(const Scheme& scheme, Rng& rng, KeyGenTrace* trace = nullptr);

/// The scheme overloads also check the shapes against the parameters.
gf2m::Matrix expand_pk(const Scheme& scheme, const PublicKey& pk);
gf2m::Matrix expand_pk(const PublicKey& pk);
/// Throws std::invalid_argument if an entry lies outside span(basis_cd) or the basis is dependent.
PublicKey compress_pk(const Scheme& scheme, const gf2m::Matrix& g_pub, std::vector<Element> basis_cd);
PublicKey compress_pk(const gf2m::Matrix& g_pub, std::vector<Element> basis_cd);

/// H' = H P_{a,b}^T, the secret rank-2 parity-check matrix of the public code.
gf2m::Matrix private_check(const Scheme& scheme, const SecretKey& sk);

ErrorChain error_chain(const Scheme& scheme, Rng& rng);
ErrorChain error_chain_from(const Scheme& scheme, const Element& e0, const Element& e1);

Encapsulation encapsulate(const Scheme& scheme, const PublicKey& pk, Rng& rng);
/// Deterministic core of encapsulation. Every entry of `error` must lie in span(chain.e_tilde).
Encapsulation encapsulate_with(const Scheme& scheme, const gf2m::Matrix& g_pub, gf2m::Vector message,
                               ErrorChain chain, gf2m::Vector error);

/// nullopt when decoding fails or no candidate pair reproduces the tag.
std::optional<SharedSecret> decapsulate(const Scheme& scheme, const SecretKey& sk, const Ciphertext& ct);

}  // namespace edonk::kem
