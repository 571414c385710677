#include "edonk/kem.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <tuple>

#include "edonk/attack.hpp"
#include "edonk/f2linalg.hpp"
#include "edonk/rankmetric.hpp"

namespace edonk::kem {

using rankmetric::Subspace;

namespace {

Params validated(Params p) {
  p.validate();
  return p;
}

gf2m::Matrix lift(const BitMatrix& b) {
  gf2m::Matrix out(b.rows(), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (b.get(i, j)) out(i, j) = Element::from_u64(1);
  return out;
}

bool independent(std::span<const Element> elems) { return Subspace::span(elems).dim() == elems.size(); }

/// Expresses members of span(basis) in the given (not canonical) basis.
class Coordinates {
 public:
  explicit Coordinates(std::span<const Element> basis) {
    if (basis.size() > 64) throw std::invalid_argument("coordinate basis larger than 64 elements");
    for (std::size_t i = 0; i < basis.size(); ++i) {
      Element x = basis[i];
      std::uint64_t tag = std::uint64_t{1} << i;
      reduce(x, tag);
      if (x.is_zero()) throw std::invalid_argument("public key basis is F2-dependent");
      rows_.push_back({x, tag, x.lowest_bit()});
    }
  }

  std::optional<std::uint64_t> of(Element x) const {
    std::uint64_t tag = 0;
    reduce(x, tag);
    if (!x.is_zero()) return std::nullopt;
    return tag;
  }

 private:
  struct Row {
    Element value;
    std::uint64_t tag;
    unsigned pivot;
  };

  void reduce(Element& x, std::uint64_t& tag) const {
    for (const auto& r : rows_)
      if (x.bit(r.pivot)) {
        x += r.value;
        tag ^= r.tag;
      }
  }

  std::vector<Row> rows_;
};

std::vector<Element> sample_basis(const gf2m::Field& field, std::size_t n, Rng& rng) {
  for (unsigned attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<Element> v(n);
    for (auto& x : v) x = field.random_nonzero(rng);
    if (independent(v)) return v;
  }
  throw std::runtime_error("keygen: could not sample an independent support basis");
}

/// K rows with entries in span(g_tilde) and G H^T = 0, F2-independent.
gf2m::Matrix sample_generator(const Scheme& scheme, const BitMatrix& h, std::span<const Element> g_tilde, Rng& rng) {
  const auto& p = scheme.params();
  const gf2m::Vector zero(p.R);
  const auto sys = f2linalg::expand_affine_system_projected(scheme.field(), lift(h), zero, g_tilde);
  const BitMatrix kernel = f2linalg::nullspace_basis(sys.system.lhs);
  if (kernel.rows() < p.K) throw std::runtime_error("keygen: code dimension below K");
  for (unsigned attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const BitMatrix pick = f2linalg::random_matrix(p.K, kernel.rows(), rng);
    const BitMatrix rows = pick * kernel;
    if (f2linalg::rank(rows) != p.K) continue;
    gf2m::Matrix g(p.K, p.N);
    for (std::size_t k = 0; k < p.K; ++k) {
      const auto row = f2linalg::combine(g_tilde, rows.row(k));
      std::copy(row.begin(), row.end(), g.row(k).begin());
    }
    return g;
  }
  throw std::runtime_error("keygen: could not sample K independent generator rows");
}

void require_zero(const gf2m::Matrix& m, const char* what) {
  if (!m.is_zero()) throw std::logic_error(std::string("keygen: ") + what + " does not vanish");
}

}  // namespace

Scheme::Scheme(Params params)
    : params_(validated(std::move(params))), field_(params_.m), hash_(params_.hash()) {}

Digest Scheme::hash_word(std::span<const Element> c) const {
  std::vector<std::uint8_t> buf;
  buf.reserve(c.size() * field_.byte_length());
  for (const auto& x : c) field_.append_encoding(x, buf);
  return hash_(buf);
}

std::pair<Element, Element> Scheme::split(const Digest& d) const {
  const std::size_t n = field_.byte_length();
  const std::span<const std::uint8_t> bytes(d);
  return {field_.decode_masked(bytes.subspan(0, n)), field_.decode_masked(bytes.subspan(n, n))};
}

std::pair<Element, Element> Scheme::chain_step(const Element& u, const Element& v) const {
  std::array<std::uint8_t, 2 * gf2m::kMaxDegree / 8> buf{};
  std::array<std::uint8_t, kMaxDigestBytes> digest{};
  const std::size_t n = field_.byte_length();
  field_.encode(u, std::span(buf).subspan(0, n));
  field_.encode(v, std::span(buf).subspan(n, n));
  hash_.digest_into({std::span<const std::uint8_t>(buf.data(), 2 * n)}, std::span(digest).first(hash_.size()));
  return {field_.decode_masked(std::span(digest).subspan(0, n)), field_.decode_masked(std::span(digest).subspan(n, n))};
}

Digest Scheme::bind(const Element& first, const Element& second, std::span<const std::uint8_t> hc) const {
  std::array<std::uint8_t, 2 * gf2m::kMaxDegree / 8> buf{};
  const std::size_t n = field_.byte_length();
  field_.encode(first, std::span(buf).subspan(0, n));
  field_.encode(second, std::span(buf).subspan(n, n));
  return hash_({std::span<const std::uint8_t>(buf.data(), 2 * n), hc});
}

bool Scheme::bind_matches(const Element& first, const Element& second, std::span<const std::uint8_t> hc,
                          std::span<const std::uint8_t> expected) const {
  if (expected.size() != hash_.size()) return false;
  std::array<std::uint8_t, 2 * gf2m::kMaxDegree / 8> buf{};
  std::array<std::uint8_t, kMaxDigestBytes> digest{};
  const std::size_t n = field_.byte_length();
  field_.encode(first, std::span(buf).subspan(0, n));
  field_.encode(second, std::span(buf).subspan(n, n));
  hash_.digest_into({std::span<const std::uint8_t>(buf.data(), 2 * n), hc}, std::span(digest).first(hash_.size()));
  return std::equal(expected.begin(), expected.end(), digest.begin());
}

gf2m::Matrix substitute(const gf2m::Field& field, const BitMatrix& p, const Element& u, const Element& v) {
  if (u.is_zero() || v.is_zero()) throw std::invalid_argument("substitute: values must be nonzero");
  if (u == v) throw std::invalid_argument("substitute: values must differ");
  if (!field.contains(u) || !field.contains(v)) throw std::invalid_argument("substitute: value outside the field");
  gf2m::Matrix out(p.rows(), p.cols());
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) out(i, j) = p.get(i, j) ? v : u;
  return out;
}

std::pair<Element, Element> dual_pair(const gf2m::Field& field, const Element& a, const Element& b) {
  const Element norm = field.inv(field.sqr(a + b));
  return {field.mul(a, norm), field.mul(b, norm)};
}

gf2m::Matrix private_check(const Scheme& scheme, const SecretKey& sk) {
  // Entry (i, j) is a * |{k : h_ik = 1, p_jk = 0}| + b * |{k : h_ik = 1, p_jk = 1}| (mod 2).
  const BitMatrix ones_with_one = sk.h * sk.p.transpose();
  gf2m::Matrix out(sk.h.rows(), sk.p.rows());
  for (std::size_t i = 0; i < sk.h.rows(); ++i) {
    const bool row_odd = sk.h.row(i).weight() & 1U;
    for (std::size_t j = 0; j < sk.p.rows(); ++j) {
      const bool n1 = ones_with_one.get(i, j);
      Element e;
      if (n1) e += sk.b;
      if (n1 != row_odd) e += sk.a;
      out(i, j) = e;
    }
  }
  (void)scheme;
  return out;
}

KeyPair keygen(const Scheme& scheme, Rng& rng, KeyGenTrace* trace) {
  const auto& p = scheme.params();
  const auto& f = scheme.field();
  for (unsigned attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    SecretKey sk;
    sk.a = f.random_nonzero(rng);
    do sk.b = f.random_nonzero(rng);
    while (sk.b == sk.a);
    const auto [c, d] = dual_pair(f, sk.a, sk.b);

    sk.p = f2linalg::random_orthogonal(p.N, rng);
    const BitMatrix top = f2linalg::random_even_colweight(p.N - p.R, p.R, rng);
    const BitMatrix bottom = f2linalg::random_orthogonal(p.R, rng);
    sk.h = top.vstack(bottom).transpose();

    const auto g_tilde = sample_basis(f, p.nu, rng);
    const gf2m::Matrix g = sample_generator(scheme, sk.h, g_tilde, rng);
    const gf2m::Matrix g_pub = f.mul(g, substitute(f, sk.p, c, d).transpose());

    std::vector<Element> basis_cd;
    for (const auto& x : g_tilde) basis_cd.push_back(f.mul(c, x));
    for (const auto& x : g_tilde) basis_cd.push_back(f.mul(d, x));
    if (!independent(basis_cd)) continue;

    require_zero(f.mul(g, lift(sk.h).transpose()), "G H^T");
    require_zero(f.mul(g_pub, private_check(scheme, sk).transpose()), "Gpub H'^T");

    KeyPair kp{compress_pk(scheme, g_pub, std::move(basis_cd)), std::move(sk)};
    if (trace) *trace = {g_tilde, g, g_pub, c, d, attempt};
    return kp;
  }
  throw std::runtime_error("keygen: public key basis dependent in every attempt");
}

PublicKey compress_pk(const gf2m::Matrix& g_pub, std::vector<Element> basis_cd) {
  const Coordinates coords(basis_cd);
  const std::size_t w = basis_cd.size();
  PublicKey pk{std::move(basis_cd), BitMatrix(g_pub.rows(), g_pub.cols() * w)};
  for (std::size_t k = 0; k < g_pub.rows(); ++k)
    for (std::size_t j = 0; j < g_pub.cols(); ++j) {
      const auto c = coords.of(g_pub(k, j));
      if (!c) throw std::invalid_argument("compress_pk: entry outside the span of the basis");
      for (std::size_t i = 0; i < w; ++i)
        if ((*c >> i) & 1U) pk.coeffs.set(k, j * w + i, true);
    }
  return pk;
}

PublicKey compress_pk(const Scheme& scheme, const gf2m::Matrix& g_pub, std::vector<Element> basis_cd) {
  const auto& p = scheme.params();
  if (basis_cd.size() != 2 * p.nu) throw std::invalid_argument("compress_pk: basis must have 2 nu elements");
  if (g_pub.rows() != p.K || g_pub.cols() != p.N) throw std::invalid_argument("compress_pk: Gpub has wrong shape");
  return compress_pk(g_pub, std::move(basis_cd));
}

gf2m::Matrix expand_pk(const PublicKey& pk) {
  const std::size_t w = pk.basis_cd.size();
  if (w == 0 || pk.coeffs.cols() % w != 0) throw std::invalid_argument("expand_pk: malformed public key");
  gf2m::Matrix g(pk.coeffs.rows(), pk.coeffs.cols() / w);
  for (std::size_t k = 0; k < g.rows(); ++k)
    for (std::size_t j = 0; j < g.cols(); ++j)
      for (std::size_t i = 0; i < w; ++i)
        if (pk.coeffs.get(k, j * w + i)) g(k, j) += pk.basis_cd[i];
  return g;
}

gf2m::Matrix expand_pk(const Scheme& scheme, const PublicKey& pk) {
  const auto& p = scheme.params();
  const std::size_t w = 2 * p.nu;
  if (pk.basis_cd.size() != w || pk.coeffs.rows() != p.K || pk.coeffs.cols() != p.N * w)
    throw std::invalid_argument("expand_pk: public key does not match parameters");
  return expand_pk(pk);
}

ErrorChain error_chain_from(const Scheme& scheme, const Element& e0, const Element& e1) {
  const unsigned L = scheme.params().L;
  ErrorChain ch;
  ch.e_tilde.reserve(L);
  ch.e_tilde.push_back(e0);
  ch.e_tilde.push_back(e1);
  while (ch.e_tilde.size() < L) {
    const auto [u, v] = scheme.chain_step(ch.e_tilde[ch.e_tilde.size() - 2], ch.e_tilde.back());
    ch.e_tilde.push_back(u);
    ch.e_tilde.push_back(v);
  }
  std::tie(ch.s0, ch.s1) = scheme.chain_step(ch.e_tilde[L - 2], ch.e_tilde[L - 1]);
  return ch;
}

ErrorChain error_chain(const Scheme& scheme, Rng& rng) {
  const Element e0 = scheme.field().random(rng);
  const Element e1 = scheme.field().random(rng);
  return error_chain_from(scheme, e0, e1);
}

Encapsulation encapsulate_with(const Scheme& scheme, const gf2m::Matrix& g_pub, gf2m::Vector message,
                               ErrorChain chain, gf2m::Vector error) {
  const auto& p = scheme.params();
  const auto& f = scheme.field();
  if (message.size() != p.K || error.size() != p.N || chain.e_tilde.size() != p.L)
    throw std::invalid_argument("encapsulate: input lengths do not match parameters");
  const Subspace v_e = Subspace::span(chain.e_tilde);
  for (const auto& x : error)
    if (!v_e.contains(x)) throw std::invalid_argument("encapsulate: error entry outside the chain support");

  gf2m::Vector c = f.mul_left(message, g_pub);
  for (std::size_t j = 0; j < p.N; ++j) c[j] += error[j];
  const Digest hc = scheme.hash_word(c);
  Encapsulation out;
  out.ss.bytes = scheme.bind(chain.s0, chain.s1, hc);
  out.ct.tag = scheme.bind(chain.s1, chain.s0, hc);
  out.ct.c = std::move(c);
  out.message = std::move(message);
  out.error = std::move(error);
  out.chain = std::move(chain);
  return out;
}

Encapsulation encapsulate(const Scheme& scheme, const PublicKey& pk, Rng& rng) {
  const auto& p = scheme.params();
  const gf2m::Matrix g_pub = expand_pk(scheme, pk);
  gf2m::Vector message(p.K);
  for (auto& x : message) x = scheme.field().random(rng);
  ErrorChain chain = error_chain(scheme, rng);
  const Subspace v_e = Subspace::span(chain.e_tilde);
  gf2m::Vector error(p.N);
  for (auto& x : error) x = v_e.element_at(uniform_below(rng, std::uint64_t{1} << v_e.dim()));
  return encapsulate_with(scheme, g_pub, std::move(message), std::move(chain), std::move(error));
}

std::optional<SharedSecret> decapsulate(const Scheme& scheme, const SecretKey& sk, const Ciphertext& ct) {
  const auto& p = scheme.params();
  const auto& f = scheme.field();
  if (ct.c.size() != p.N || ct.tag.size() != p.hash_bytes()) return std::nullopt;
  for (const auto& x : ct.c)
    if (!f.contains(x)) return std::nullopt;

  attack::ReconstructedCheck check;
  check.kind = attack::CheckKind::rank2;
  check.alpha = f.div(sk.a, sk.b);
  check.rows = f.scale(f.inv(sk.b), private_check(scheme, sk));
  try {
    const auto decoded = attack::attack_decode(scheme, check, ct.c);
    return attack::recover_secret(scheme, decoded.support_bound, ct).secret;
  } catch (const attack::AttackFailure&) {
    return std::nullopt;
  }
}

}  // namespace edonk::kem
