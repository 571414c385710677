#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "edonk/gf2m.hpp"
#include "edonk/kem.hpp"
#include "edonk/subspace.hpp"

// Shared-secret recovery from a public key and a ciphertext. Nothing in this namespace takes a
// secret key.
namespace edonk::attack {

using gf2m::Element;
using kem::Ciphertext;
using kem::PublicKey;
using kem::Scheme;
using kem::SharedSecret;
using rankmetric::Subspace;

enum class CheckKind { rank2, binary };

/// Parity checks of the public code recovered from the public key.
struct ReconstructedCheck {
  gf2m::Matrix rows;  // entries in span{1, alpha} (rank2) or {0, 1} (binary)
  Element alpha;      // one for binary checks
  CheckKind kind = CheckKind::rank2;
  std::size_t expanded_equations = 0;
  std::size_t unknowns = 0;
  /// Fewer rows than the secret check matrix has; the attack still proceeds.
  bool degenerate = false;
};

/// A pipeline step could not complete. `phase` names the step.
class AttackFailure : public std::runtime_error {
 public:
  AttackFailure(std::string phase, const std::string& what)
      : std::runtime_error(phase + ": " + what), phase_(std::move(phase)) {}
  const std::string& phase() const { return phase_; }

 private:
  std::string phase_;
};

struct Decoded {
  gf2m::Vector error;
  Subspace support_bound;  // (1 + alpha)^-1 Supp(s)
  gf2m::Vector syndrome;
  std::size_t ambiguity = 0;  // kernel dimension of the constrained solve
};

struct SecretSearch {
  std::optional<SharedSecret> secret;
  std::uint64_t chain_evaluations = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> match;  // coefficient integers of (lambda, mu)
};

/// alpha = a / b, read off the compressed public key as basis_cd[0] / basis_cd[nu].
Element recover_alpha(const Scheme& scheme, const PublicKey& pk);

/// All y with Gpub y^T = 0 whose entries are 1 or alpha, closed under addition: every y_j lies in
/// span{1, alpha} and the coefficient of 1 in the basis (1, 1 + alpha) is the same at every position.
ReconstructedCheck reconstruct_h3(const Scheme& scheme, const PublicKey& pk, const Element& alpha);
/// All binary y with Gpub y^T = 0. Needs no alpha, so it also applies to uncompressed keys.
ReconstructedCheck reconstruct_h4(const Scheme& scheme, const gf2m::Matrix& g_pub);

/// Syndrome decoding against a rank-2 check whose entries are 1 or alpha.
Decoded attack_decode(const Scheme& scheme, const ReconstructedCheck& check, std::span<const Element> c);

/// Searches V x V for the last pair of the hash chain. Pairs are visited in ascending
/// (index(lambda), index(mu)) order; the result is the first match regardless of `threads`.
SecretSearch recover_secret(const Scheme& scheme, const Subspace& v, const Ciphertext& ct, unsigned threads = 1);

enum class Strategy { rank2, binary, automatic };

const char* to_string(Strategy s);
Strategy strategy_from_string(std::string_view s);

struct PhaseTiming {
  std::chrono::microseconds alpha{0};
  std::chrono::microseconds reconstruct{0};
  std::chrono::microseconds decode{0};
  std::chrono::microseconds search{0};
};

struct AttackReport {
  bool success = false;
  Strategy variant = Strategy::rank2;  // the variant that produced the result (or failed last)
  std::optional<SharedSecret> recovered_ss;
  std::optional<gf2m::Vector> error;
  std::size_t support_dim = 0;
  std::size_t check_rows = 0;
  std::uint64_t chain_evaluations = 0;
  PhaseTiming timing;
  std::string failed_phase;
  std::string diagnostic;

  /// One line of space-separated key=value pairs.
  std::string to_record() const;
};

/// Each throws AttackFailure on failure.
AttackReport attack_rank2(const Scheme& scheme, const PublicKey& pk, const Ciphertext& ct, unsigned threads = 1);
AttackReport attack_binary(const Scheme& scheme, const gf2m::Matrix& g_pub, const Ciphertext& ct,
                           unsigned threads = 1);

/// Never throws AttackFailure; a failed run has success == false and names the failing phase.
AttackReport run(const Scheme& scheme, const PublicKey& pk, const Ciphertext& ct, Strategy strategy,
                 unsigned threads = 1);

}  // namespace edonk::attack
