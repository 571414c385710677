#include "edonk/gf2m.hpp"

#include <algorithm>
#include <bit>
#include <string>

#if defined(EDONK_USE_PCLMUL)
#include <immintrin.h>
#endif

namespace edonk::gf2m {

namespace {

// Double-width product buffer.
using Wide = std::array<std::uint64_t, 2 * kWords>;

}  // namespace

namespace detail {

void clmul64_portable(std::uint64_t a, std::uint64_t b, std::uint64_t& lo, std::uint64_t& hi) {
  // 4-bit window over b.
  std::uint64_t table_lo[16];
  std::uint64_t table_hi[16];
  table_lo[0] = 0;
  table_hi[0] = 0;
  for (unsigned i = 1; i < 16; ++i) {
    std::uint64_t l = 0;
    std::uint64_t h = 0;
    for (unsigned k = 0; k < 4; ++k) {
      if ((i >> k) & 1U) {
        l ^= a << k;
        h ^= k ? a >> (64 - k) : 0;
      }
    }
    table_lo[i] = l;
    table_hi[i] = h;
  }
  lo = 0;
  hi = 0;
  for (int shift = 60; shift >= 0; shift -= 4) {
    const unsigned nib = (b >> shift) & 0xF;
    // (hi:lo) <<= 4 would lose ordering; accumulate at the right offset instead.
    const std::uint64_t tl = table_lo[nib];
    const std::uint64_t th = table_hi[nib];
    if (shift == 0) {
      lo ^= tl;
      hi ^= th;
    } else {
      lo ^= tl << shift;
      hi ^= (tl >> (64 - shift)) ^ (th << shift);
    }
  }
}

void clmul64(std::uint64_t a, std::uint64_t b, std::uint64_t& lo, std::uint64_t& hi) {
#if defined(EDONK_USE_PCLMUL)
  const __m128i x = _mm_set_epi64x(0, static_cast<long long>(a));
  const __m128i y = _mm_set_epi64x(0, static_cast<long long>(b));
  const __m128i r = _mm_clmulepi64_si128(x, y, 0x00);
  lo = static_cast<std::uint64_t>(_mm_cvtsi128_si64(r));
  hi = static_cast<std::uint64_t>(_mm_extract_epi64(r, 1));
#else
  clmul64_portable(a, b, lo, hi);
#endif
}

}  // namespace detail

unsigned Element::lowest_bit() const {
  for (std::size_t i = 0; i < kWords; ++i)
    if (w[i]) return static_cast<unsigned>(i * 64 + std::countr_zero(w[i]));
  return kWords * 64;
}

int Element::degree() const {
  for (std::size_t i = kWords; i-- > 0;)
    if (w[i]) return static_cast<int>(i * 64 + 63 - std::countl_zero(w[i]));
  return -1;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Element& e) { return e.is_zero(); });
}

std::uint64_t default_tail(unsigned m) {
  switch (m) {
    case 128:
    case 192:
      return 0x87;  // x^7 + x^2 + x + 1
    case 16:
      return 0x2B;  // x^5 + x^3 + x + 1
    case 8:
      return 0x1B;  // x^4 + x^3 + x + 1
    case 4:
      return 0x3;  // x + 1
    default:
      break;
  }
  if (m >= 2 && m <= 24) {
    for (std::uint64_t tail = 1; tail < (std::uint64_t{1} << m); tail += 2)
      if (is_irreducible_exhaustive(m, tail)) return tail;
  }
  throw std::invalid_argument("no built-in reduction polynomial for m = " + std::to_string(m));
}

namespace {

int poly_degree(std::uint64_t p) { return p ? 63 - std::countl_zero(p) : -1; }

// p mod d for single-word polynomials.
std::uint64_t poly_mod(std::uint64_t p, std::uint64_t d) {
  const int dd = poly_degree(d);
  for (int deg = poly_degree(p); deg >= dd; deg = poly_degree(p)) p ^= d << (deg - dd);
  return p;
}

}  // namespace

bool is_irreducible_exhaustive(unsigned m, std::uint64_t tail) {
  if (m < 1 || m > 32) throw std::invalid_argument("exhaustive irreducibility check limited to m <= 32");
  if (tail >> m) throw std::invalid_argument("tail must have degree < m");
  const std::uint64_t p = (std::uint64_t{1} << m) | tail;
  for (unsigned deg = 1; deg <= m / 2; ++deg)
    for (std::uint64_t d = std::uint64_t{1} << deg; d < (std::uint64_t{1} << (deg + 1)); ++d)
      if (poly_mod(p, d) == 0) return false;
  return true;
}

Field::Field(unsigned m) { init(m, default_tail(m)); }

Field::Field(unsigned m, std::span<const unsigned> low_terms) {
  std::uint64_t tail = 0;
  for (unsigned e : low_terms) {
    if (e >= m || e >= 64) throw std::invalid_argument("reduction term out of range");
    tail ^= std::uint64_t{1} << e;
  }
  if (m <= 24) {
    if (!is_irreducible_exhaustive(m, tail)) throw std::invalid_argument("reduction polynomial is reducible");
  } else if (m > kMaxDegree || tail != default_tail(m)) {
    throw std::invalid_argument("unverified reduction polynomial for m = " + std::to_string(m));
  }
  init(m, tail);
}

void Field::init(unsigned m, std::uint64_t tail) {
  if (m < 2 || m > kMaxDegree) throw std::invalid_argument("field degree out of range");
  m_ = m;
  tail_ = tail;
  words_ = (m + 63) / 64;
  for (unsigned i = 0; i < m; ++i) mask_.flip(i);
}

bool Field::contains(const Element& x) const {
  for (std::size_t i = 0; i < kWords; ++i)
    if (x.w[i] & ~mask_.w[i]) return false;
  return true;
}

Element Field::add(const Element& x, const Element& y) const {
  if (!contains(x) || !contains(y)) throw std::invalid_argument("element does not belong to this field");
  return x + y;
}

Element Field::mul(const Element& x, const Element& y) const {
  Wide p{};
  for (std::size_t i = 0; i < words_; ++i) {
    if (!x.w[i]) continue;
    for (std::size_t j = 0; j < words_; ++j) {
      std::uint64_t lo, hi;
      detail::clmul64(x.w[i], y.w[j], lo, hi);
      p[i + j] ^= lo;
      p[i + j + 1] ^= hi;
    }
  }
  // Fold x^m * q(x) into q(x) * tail(x) until nothing remains above degree m-1.
  const std::size_t wq = m_ / 64;
  const unsigned bq = m_ % 64;
  for (;;) {
    Wide q{};
    bool any = false;
    for (std::size_t k = 0; k + wq < p.size(); ++k) {
      std::uint64_t v = p[k + wq] >> bq;
      if (bq && k + wq + 1 < p.size()) v |= p[k + wq + 1] << (64 - bq);
      q[k] = v;
      any |= v != 0;
    }
    if (!any) break;
    for (std::size_t k = 0; k < p.size(); ++k) p[k] &= k < kWords ? mask_.w[k] : 0;
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
      if (!q[k]) continue;
      std::uint64_t lo, hi;
      detail::clmul64(q[k], tail_, lo, hi);
      p[k] ^= lo;
      p[k + 1] ^= hi;
    }
  }
  Element r;
  std::copy_n(p.begin(), kWords, r.w.begin());
  return r;
}

Element Field::inv(const Element& x) const {
  if (x.is_zero()) throw std::domain_error("inverse of zero field element");
  // x^(2^m - 2) = (x^(2^(m-1) - 1))^2
  Element t = x;
  for (unsigned i = 1; i + 1 < m_; ++i) t = mul(sqr(t), x);
  return sqr(t);
}

BitVector Field::coords(const Element& x) const {
  BitVector v(m_);
  auto w = v.words();
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = x.w[i] & mask_.w[i];
  return v;
}

Element Field::from_coords(const BitVector& v) const {
  if (v.size() != m_) throw std::invalid_argument("coordinate vector length must equal m");
  Element e;
  auto w = v.words();
  for (std::size_t i = 0; i < w.size(); ++i) e.w[i] = w[i];
  return e;
}

Element Field::random(Rng& rng) const {
  Element e;
  for (std::size_t i = 0; i < words_; ++i) e.w[i] = rng() & mask_.w[i];
  return e;
}

Element Field::random_nonzero(Rng& rng) const {
  for (;;) {
    Element e = random(rng);
    if (!e.is_zero()) return e;
  }
}

void Field::encode(const Element& x, std::span<std::uint8_t> out) const {
  if (out.size() != byte_length()) throw std::invalid_argument("encode: wrong buffer size");
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint8_t>(x.w[i / 8] >> (8 * (i % 8)));
}

void Field::append_encoding(const Element& x, std::vector<std::uint8_t>& out) const {
  const std::size_t n = byte_length();
  for (std::size_t i = 0; i < n; ++i) out.push_back(static_cast<std::uint8_t>(x.w[i / 8] >> (8 * (i % 8))));
}

Element Field::decode_masked(std::span<const std::uint8_t> in) const {
  if (in.size() != byte_length()) throw std::invalid_argument("decode: wrong buffer size");
  Element e;
  for (std::size_t i = 0; i < in.size(); ++i) e.w[i / 8] |= std::uint64_t{in[i]} << (8 * (i % 8));
  for (std::size_t i = 0; i < kWords; ++i) e.w[i] &= mask_.w[i];
  return e;
}

Element Field::decode(std::span<const std::uint8_t> in) const {
  if (in.size() != byte_length()) throw std::invalid_argument("decode: wrong buffer size");
  Element e;
  for (std::size_t i = 0; i < in.size(); ++i) e.w[i / 8] |= std::uint64_t{in[i]} << (8 * (i % 8));
  if (!contains(e)) throw std::invalid_argument("decode: nonzero bits above field degree");
  return e;
}

Matrix Field::mul(const Matrix& a, const Matrix& b) const {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Element& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) c(i, j) += mul(aik, b(k, j));
    }
  return c;
}

Vector Field::mul_transposed(const Matrix& a, std::span<const Element> x) const {
  if (a.cols() != x.size()) throw std::invalid_argument("matrix/vector dimension mismatch");
  Vector s(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero() && !x[j].is_zero()) s[i] += mul(a(i, j), x[j]);
  return s;
}

Vector Field::mul_left(std::span<const Element> x, const Matrix& a) const {
  if (a.rows() != x.size()) throw std::invalid_argument("matrix/vector dimension mismatch");
  Vector s(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) s[j] += mul(x[i], a(i, j));
  }
  return s;
}

Matrix Field::scale(const Element& s, const Matrix& a) const {
  Matrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = mul(s, a(i, j));
  return r;
}

}  // namespace edonk::gf2m
