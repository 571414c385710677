#include <openssl/evp.h>

#include <set>
#include <vector>

#include "doctest.h"
#include "edonk/f2linalg.hpp"
#include "edonk/kem.hpp"
#include "edonk/rankmetric.hpp"
#include "oracles.hpp"

using edonk::BitMatrix;
using edonk::Rng;
using edonk::gf2m::Element;
using edonk::gf2m::Field;
using edonk::rankmetric::Subspace;
namespace kem = edonk::kem;
namespace la = edonk::f2linalg;
namespace rm = edonk::rankmetric;

namespace {

Element el(std::uint64_t v) { return Element::from_u64(v); }

/// Independent digest: one-shot OpenSSL call over explicitly built little-endian encodings.
std::vector<std::uint8_t> sha(std::size_t bytes, const std::vector<std::uint8_t>& in) {
  std::vector<std::uint8_t> out(bytes);
  unsigned len = 0;
  EVP_Digest(in.data(), in.size(), out.data(), &len, bytes == 32 ? EVP_sha256() : EVP_sha384(), nullptr);
  return out;
}

void put(std::vector<std::uint8_t>& buf, const Element& x, unsigned m) {
  for (unsigned byte = 0; byte < (m + 7) / 8; ++byte) {
    std::uint8_t v = 0;
    for (unsigned bit = 0; bit < 8; ++bit)
      if (x.bit(8 * byte + bit)) v |= static_cast<std::uint8_t>(1U << bit);
    buf.push_back(v);
  }
}

Element take(const std::vector<std::uint8_t>& d, std::size_t offset, unsigned m) {
  Element x;
  for (unsigned i = 0; i < m; ++i) x.set(i, (d[offset + i / 8] >> (i % 8)) & 1U);
  return x;
}

/// Plain field matrix product, entry by entry.
edonk::gf2m::Matrix product(const Field& f, const edonk::gf2m::Matrix& a, const edonk::gf2m::Matrix& b) {
  edonk::gf2m::Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k) out(i, j) += oracle::mul(f.degree(), f.reduction_tail(), a(i, k), b(k, j));
  return out;
}

edonk::gf2m::Matrix lift(const BitMatrix& b) {
  edonk::gf2m::Matrix out(b.rows(), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (b.get(i, j)) out(i, j) = el(1);
  return out;
}

edonk::gf2m::Matrix transpose(const edonk::gf2m::Matrix& a) { return a.transpose(); }

/// Checks every keygen invariant against oracles built from the trace and the secret key.
void check_identities(const kem::Scheme& s, const kem::KeyPair& kp, const kem::KeyGenTrace& tr) {
  const auto& p = s.params();
  const auto& f = s.field();
  const auto& sk = kp.sk;
  CHECK_FALSE(sk.a.is_zero());
  CHECK_FALSE(sk.b.is_zero());
  CHECK(sk.a != sk.b);
  CHECK(sk.p * sk.p.transpose() == BitMatrix::identity(p.N));
  REQUIRE(sk.h.rows() == p.R);
  REQUIRE(sk.h.cols() == p.N);
  const BitMatrix ht = sk.h.transpose();
  for (std::size_t j = 0; j < p.R; ++j) CHECK(ht.row_range(0, p.N - p.R).column(j).weight() % 2 == 0);
  const BitMatrix hb = ht.row_range(p.N - p.R, p.R);
  CHECK(hb * hb.transpose() == BitMatrix::identity(p.R));

  // c = a / (a^2 + b^2), d = b / (a^2 + b^2), checked by multiplying back.
  const auto norm = oracle::mul(p.m, f.reduction_tail(), sk.a, sk.a) + oracle::mul(p.m, f.reduction_tail(), sk.b, sk.b);
  CHECK(oracle::mul(p.m, f.reduction_tail(), tr.c, norm) == sk.a);
  CHECK(oracle::mul(p.m, f.reduction_tail(), tr.d, norm) == sk.b);

  const auto p_ab = kem::substitute(f, sk.p, sk.a, sk.b);
  const auto p_cd = kem::substitute(f, sk.p, tr.c, tr.d);
  edonk::gf2m::Matrix identity(p.N, p.N);
  for (std::size_t i = 0; i < p.N; ++i) identity(i, i) = el(1);
  CHECK(product(f, transpose(p_cd), p_ab) == identity);

  CHECK(product(f, tr.g, transpose(lift(sk.h))).is_zero());
  const auto h_tilde = product(f, lift(sk.h), transpose(p_ab));
  CHECK(kem::private_check(s, sk) == h_tilde);
  CHECK(product(f, tr.g_pub, transpose(h_tilde)).is_zero());
  for (const auto& x : h_tilde.entries()) CHECK((x == sk.a || x == sk.b));

  CHECK(product(f, tr.g, transpose(p_cd)) == tr.g_pub);
  CHECK(kem::expand_pk(s, kp.pk) == tr.g_pub);

  const auto v_g = Subspace::span(tr.g_tilde);
  CHECK(v_g.dim() == p.nu);
  for (const auto& x : tr.g.entries()) CHECK(v_g.contains(x));
  const auto v_gcd = Subspace::span(kp.pk.basis_cd);
  CHECK(v_gcd.dim() == 2 * p.nu);
  for (const auto& x : tr.g_pub.entries()) CHECK(v_gcd.contains(x));
  for (std::size_t i = 0; i < p.nu; ++i) {
    CHECK(kp.pk.basis_cd[i] == oracle::mul(p.m, f.reduction_tail(), tr.c, tr.g_tilde[i]));
    CHECK(kp.pk.basis_cd[p.nu + i] == oracle::mul(p.m, f.reduction_tail(), tr.d, tr.g_tilde[i]));
  }

  // F2-independence of the rows of G: each row's coordinates stacked into one long bit vector.
  BitMatrix rows(p.K, p.N * p.m);
  for (std::size_t k = 0; k < p.K; ++k)
    for (std::size_t j = 0; j < p.N; ++j)
      for (unsigned l = 0; l < p.m; ++l) rows.set(k, j * p.m + l, tr.g(k, j).bit(l));
  CHECK(la::rank(rows) == p.K);
}

}  // namespace

TEST_SUITE("kem") {
  TEST_CASE("substitute") {
    const Field f(8);
    const Element a = el(0x53), b = el(0xCA);
    const auto zero = kem::substitute(f, BitMatrix(2, 3), a, b);
    for (const auto& x : zero.entries()) CHECK(x == a);
    const auto id = kem::substitute(f, BitMatrix::identity(3), a, b);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(id(i, j) == (i == j ? b : a));
    CHECK_THROWS(kem::substitute(f, BitMatrix(1, 1), a, a));
    CHECK_THROWS(kem::substitute(f, BitMatrix(1, 1), el(0), b));

    Rng rng(1);
    for (int t = 0; t < 20; ++t) {
      const auto p = la::random_orthogonal(8, rng);
      const Element x = f.random_nonzero(rng);
      Element y;
      do y = f.random_nonzero(rng);
      while (y == x);
      const auto [c, d] = kem::dual_pair(f, x, y);
      edonk::gf2m::Matrix identity(8, 8);
      for (std::size_t i = 0; i < 8; ++i) identity(i, i) = el(1);
      CHECK(product(f, kem::substitute(f, p, c, d).transpose(), kem::substitute(f, p, x, y)) == identity);
    }
  }

  TEST_CASE("keygen identities") {
    for (const char* name : {"toy", "toy-n24", "toy-n8"}) {
      const kem::Scheme s(kem::params_by_name(name));
      Rng rng(2);
      for (int t = 0; t < 10; ++t) {
        kem::KeyGenTrace tr;
        const auto kp = kem::keygen(s, rng, &tr);
        CAPTURE(name);
        check_identities(s, kp, tr);
      }
    }
    const kem::Scheme ref(kem::params_by_name("edonk128ref"));
    Rng rng(3);
    kem::KeyGenTrace tr;
    const auto kp = kem::keygen(ref, rng, &tr);
    check_identities(ref, kp, tr);
    CHECK(kp.pk.coeffs.rows() * kp.pk.coeffs.cols() == 36864);
  }

  TEST_CASE("keygen is deterministic") {
    const kem::Scheme s(kem::params_by_name("toy"));
    Rng r1(9), r2(9);
    const auto k1 = kem::keygen(s, r1), k2 = kem::keygen(s, r2);
    CHECK(k1.pk == k2.pk);
    CHECK(k1.sk == k2.sk);
  }

  TEST_CASE("public key compression") {
    const kem::Scheme s(kem::params_by_name("toy-n24"));
    Rng rng(4);
    for (int t = 0; t < 20; ++t) {
      kem::KeyGenTrace tr;
      const auto kp = kem::keygen(s, rng, &tr);
      CHECK(kem::compress_pk(s, kem::expand_pk(s, kp.pk), kp.pk.basis_cd) == kp.pk);
    }
    const auto kp = kem::keygen(s, rng);
    const edonk::gf2m::Matrix zero(s.params().K, s.params().N);
    const auto zpk = kem::compress_pk(s, zero, kp.pk.basis_cd);
    CHECK(zpk.coeffs.is_zero());
    CHECK(kem::expand_pk(s, zpk) == zero);

    edonk::gf2m::Matrix outside = zero;
    Element stray = el(1);
    while (Subspace::span(kp.pk.basis_cd).contains(stray)) stray = s.field().random_nonzero(rng);
    outside(0, 0) = stray;
    CHECK_THROWS(kem::compress_pk(s, outside, kp.pk.basis_cd));
  }

  TEST_CASE("hand-computed 1x1 key at m = 8, nu = 1") {
    // c = 0x02, d = 0x03, g = 0x53: basis (c g, d g) = (0xA6, 0xF5) in the AES field.
    CHECK(oracle::mul(8, 0x1B, el(0x02), el(0x53)) == el(0xA6));
    CHECK(oracle::mul(8, 0x1B, el(0x03), el(0x53)) == el(0xF5));
    const std::vector<Element> basis{el(0xA6), el(0xF5)};
    edonk::gf2m::Matrix g(1, 1);
    g(0, 0) = el(0xA6 ^ 0xF5);
    const auto pk = kem::compress_pk(g, basis);
    CHECK(pk.coeffs.to_string() == "11\n");
    CHECK(kem::expand_pk(pk) == g);
    g(0, 0) = el(0xF5);
    CHECK(kem::compress_pk(g, basis).coeffs.to_string() == "01\n");
    g(0, 0) = el(0x01);
    CHECK_THROWS(kem::compress_pk(g, basis));
  }

  TEST_CASE("hashing follows the byte layout") {
    for (const char* name : {"toy", "edonk128ref", "edonk192ref"}) {
      const kem::Scheme s(kem::params_by_name(name));
      const auto& p = s.params();
      Rng rng(5);
      const Element u = s.field().random(rng), v = s.field().random(rng);
      std::vector<std::uint8_t> buf;
      put(buf, u, p.m);
      put(buf, v, p.m);
      const auto d = sha(p.hash_bytes(), buf);
      const auto [x, y] = s.chain_step(u, v);
      CHECK(x == take(d, 0, p.m));
      CHECK(y == take(d, p.element_bytes(), p.m));

      std::vector<Element> word(p.N);
      for (auto& e : word) e = s.field().random(rng);
      std::vector<std::uint8_t> wb;
      for (const auto& e : word) put(wb, e, p.m);
      const auto hc = sha(p.hash_bytes(), wb);
      CHECK(s.hash_word(word) == hc);
      std::vector<std::uint8_t> bound;
      put(bound, u, p.m);
      put(bound, v, p.m);
      bound.insert(bound.end(), hc.begin(), hc.end());
      CHECK(s.bind(u, v, hc) == sha(p.hash_bytes(), bound));
      CHECK(s.bind_matches(u, v, hc, sha(p.hash_bytes(), bound)));
      CHECK_FALSE(s.bind_matches(v, u, hc, sha(p.hash_bytes(), bound)));
    }
  }

  TEST_CASE("error chain links") {
    const kem::Scheme s(kem::params_by_name("edonk128ref"));
    Rng rng(6);
    const auto ch = kem::error_chain(s, rng);
    REQUIRE(ch.e_tilde.size() == 6);
    for (std::size_t i = 2; i < 6; i += 2) {
      const auto [u, v] = s.chain_step(ch.e_tilde[i - 2], ch.e_tilde[i - 1]);
      CHECK(u == ch.e_tilde[i]);
      CHECK(v == ch.e_tilde[i + 1]);
    }
    CHECK(s.chain_step(ch.e_tilde[4], ch.e_tilde[5]) == std::pair{ch.s0, ch.s1});
    Rng again(6);
    CHECK(kem::error_chain(s, again).e_tilde == ch.e_tilde);

    const kem::Scheme toy(kem::params_by_name("toy"));
    const auto short_chain = kem::error_chain_from(toy, el(3), el(5));
    CHECK(short_chain.e_tilde == std::vector<Element>{el(3), el(5)});
    CHECK(toy.chain_step(el(3), el(5)) == std::pair{short_chain.s0, short_chain.s1});
  }

  TEST_CASE("encapsulation structure") {
    const kem::Scheme s(kem::params_by_name("toy"));
    const auto& f = s.field();
    Rng rng(7);
    const auto kp = kem::keygen(s, rng);
    const auto g_pub = kem::expand_pk(s, kp.pk);
    int full = 0;
    for (int t = 0; t < 1000; ++t) {
      const auto enc = kem::encapsulate(s, kp.pk, rng);
      const auto v_e = Subspace::span(enc.chain.e_tilde);
      CHECK(rm::rank_weight(enc.error) <= s.params().L);
      auto diff = enc.ct.c;
      const auto mg = f.mul_left(enc.message, g_pub);
      for (std::size_t j = 0; j < diff.size(); ++j) diff[j] += mg[j];
      CHECK(diff == enc.error);
      CHECK(v_e.contains(rm::support(diff)));
      full += rm::support(enc.error) == v_e;

      std::vector<std::uint8_t> wb;
      for (const auto& e : enc.ct.c) put(wb, e, s.params().m);
      const auto hc = sha(32, wb);
      std::vector<std::uint8_t> ss, tag;
      put(ss, enc.chain.s0, s.params().m);
      put(ss, enc.chain.s1, s.params().m);
      put(tag, enc.chain.s1, s.params().m);
      put(tag, enc.chain.s0, s.params().m);
      ss.insert(ss.end(), hc.begin(), hc.end());
      tag.insert(tag.end(), hc.begin(), hc.end());
      CHECK(enc.ss.bytes == sha(32, ss));
      CHECK(enc.ct.tag == sha(32, tag));
    }
    CHECK(full >= 990);

    auto bad = kem::error_chain_from(s, el(1), el(2));
    edonk::gf2m::Vector err(s.params().N);
    err[0] = el(4);
    CHECK_THROWS(kem::encapsulate_with(s, g_pub, edonk::gf2m::Vector(s.params().K), bad, err));
  }

  TEST_CASE("decapsulation round trips and rejects tampering") {
    const kem::Scheme s(kem::params_by_name("toy-n24"));
    Rng rng(8);
    int ok = 0;
    for (int t = 0; t < 100; ++t) {
      const auto kp = kem::keygen(s, rng);
      const auto enc = kem::encapsulate(s, kp.pk, rng);
      const auto ss = kem::decapsulate(s, kp.sk, enc.ct);
      ok += ss && *ss == enc.ss;

      auto tampered = enc.ct;
      tampered.tag[0] ^= 1;
      CHECK_FALSE(kem::decapsulate(s, kp.sk, tampered));
      auto shortened = enc.ct;
      shortened.c.pop_back();
      CHECK_FALSE(kem::decapsulate(s, kp.sk, shortened));
    }
    CHECK(ok == 100);

    const kem::Scheme ref(kem::params_by_name("edonk128ref"));
    const auto kp = kem::keygen(ref, rng);
    const auto enc = kem::encapsulate(ref, kp.pk, rng);
    const auto ss = kem::decapsulate(ref, kp.sk, enc.ct);
    REQUIRE(ss);
    CHECK(*ss == enc.ss);
  }

  TEST_CASE("parameter validation") {
    CHECK_THROWS(kem::custom_params(16, 18, 2, 5, 2, 3));
    CHECK_THROWS(kem::custom_params(16, 18, 2, 4, 2, 2));
    CHECK_THROWS(kem::custom_params(16, 17, 2, 5, 2, 2));
    CHECK_THROWS(kem::params_by_name("nope"));
    CHECK(kem::table_params().size() == 9);
    for (const auto& p : kem::table_params()) {
      CHECK_NOTHROW(p.validate());
      CHECK(kem::params_by_name(p.name).same_shape(p));
    }
    CHECK(kem::custom_params(16, 18, 2, 5, 2, 2).name == "toy");
  }
}
