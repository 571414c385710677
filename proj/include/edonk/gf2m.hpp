#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "edonk/bits.hpp"

namespace edonk {

/// Deterministic RNG used across the library. State is always passed explicitly.
using Rng = std::mt19937_64;

/// Uniform integer in [0, n) by rejection; independent of the standard library's distributions.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = n ? (~std::uint64_t{0} - (~std::uint64_t{0} % n)) : 0;
  for (;;) {
    const std::uint64_t v = rng();
    if (v < limit) return v % n;
  }
}

}  // namespace edonk

namespace edonk::gf2m {

inline constexpr unsigned kMaxDegree = 192;
inline constexpr std::size_t kWords = 3;

/// An element of GF(2^m) in the polynomial basis: bit l holds the coefficient of x^l.
/// Elements carry no context; the owning Field validates range at its boundaries.
struct Element {
  std::array<std::uint64_t, kWords> w{};

  static Element from_u64(std::uint64_t v) {
    Element e;
    e.w[0] = v;
    return e;
  }

  bool is_zero() const { return (w[0] | w[1] | w[2]) == 0; }
  bool bit(std::size_t i) const { return (w[i / 64] >> (i % 64)) & 1U; }
  void flip(std::size_t i) { w[i / 64] ^= std::uint64_t{1} << (i % 64); }
  void set(std::size_t i, bool v) {
    if (bit(i) != v) flip(i);
  }
  /// Index of the lowest set coefficient; undefined for zero.
  unsigned lowest_bit() const;
  /// Degree of the polynomial; -1 for zero.
  int degree() const;

  Element& operator+=(const Element& o) {
    for (std::size_t i = 0; i < kWords; ++i) w[i] ^= o.w[i];
    return *this;
  }
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

using Vector = std::vector<Element>;

class Field;

/// Dense matrix over GF(2^m), row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Element& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const Element> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Element> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  const std::vector<Element>& entries() const { return data_; }

  Matrix transpose() const;
  bool is_zero() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

/// GF(2)[x]/(x^m + r(x)). Immutable after construction; safe to share across threads.
class Field {
 public:
  /// Uses the library's fixed modulus for m (128, 192, or any m <= 24).
  explicit Field(unsigned m);
  /// x^m + sum of x^e for e in low_terms. Irreducibility is checked exhaustively for m <= 24;
  /// larger m is accepted only for the built-in moduli.
  Field(unsigned m, std::span<const unsigned> low_terms);

  unsigned degree() const { return m_; }
  /// r(x) such that the modulus is x^m + r(x).
  std::uint64_t reduction_tail() const { return tail_; }
  std::size_t byte_length() const { return (m_ + 7) / 8; }

  Element zero() const { return {}; }
  Element one() const { return Element::from_u64(1); }
  bool contains(const Element& x) const;

  /// Checked addition: both operands must belong to this field.
  Element add(const Element& x, const Element& y) const;
  Element mul(const Element& x, const Element& y) const;
  Element sqr(const Element& x) const { return mul(x, x); }
  /// Throws std::domain_error on zero.
  Element inv(const Element& x) const;
  Element div(const Element& x, const Element& y) const { return mul(x, inv(y)); }

  BitVector coords(const Element& x) const;
  Element from_coords(const BitVector& v) const;

  Element random(Rng& rng) const;
  Element random_nonzero(Rng& rng) const;

  /// ceil(m/8) bytes, little-endian, coefficient of x^0 in bit 0 of byte 0.
  void encode(const Element& x, std::span<std::uint8_t> out) const;
  void append_encoding(const Element& x, std::vector<std::uint8_t>& out) const;
  /// Rejects nonzero bits above degree m-1.
  Element decode(std::span<const std::uint8_t> in) const;
  /// Same as decode but clears bits above degree m-1 (for hash outputs).
  Element decode_masked(std::span<const std::uint8_t> in) const;

  Matrix mul(const Matrix& a, const Matrix& b) const;
  /// A x^T for a row vector x.
  Vector mul_transposed(const Matrix& a, std::span<const Element> x) const;
  /// x A for a row vector x.
  Vector mul_left(std::span<const Element> x, const Matrix& a) const;
  Matrix scale(const Element& s, const Matrix& a) const;

  friend bool operator==(const Field& a, const Field& b) { return a.m_ == b.m_ && a.tail_ == b.tail_; }

 private:
  void init(unsigned m, std::uint64_t tail);

  unsigned m_ = 0;
  std::uint64_t tail_ = 0;
  std::size_t words_ = 0;
  Element mask_{};
};

/// True iff x^m + tail is irreducible, by trial division with every polynomial of degree <= m/2.
bool is_irreducible_exhaustive(unsigned m, std::uint64_t tail);

/// Reduction tail of the built-in modulus for m; throws std::invalid_argument if there is none.
std::uint64_t default_tail(unsigned m);

namespace detail {
/// 64x64 -> 128 carry-less multiply; portable reference version.
void clmul64_portable(std::uint64_t a, std::uint64_t b, std::uint64_t& lo, std::uint64_t& hi);
void clmul64(std::uint64_t a, std::uint64_t b, std::uint64_t& lo, std::uint64_t& hi);
}  // namespace detail

}  // namespace edonk::gf2m
