#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace edonk {

/// Packed vector over GF(2). Bit i lives in word i/64 at position i%64.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : n_(n), words_((n + 63) / 64) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i, bool v) {
    const std::uint64_t m = std::uint64_t{1} << (i % 64);
    words_[i / 64] = v ? (words_[i / 64] | m) : (words_[i / 64] & ~m);
  }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  std::span<std::uint64_t> words() { return words_; }
  std::span<const std::uint64_t> words() const { return words_; }

  bool is_zero() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  std::size_t weight() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  BitVector& operator^=(const BitVector& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  /// Inner product mod 2.
  friend bool dot(const BitVector& a, const BitVector& b) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i) acc ^= a.words_[i] & b.words_[i];
    return std::popcount(acc) & 1;
  }

  std::string to_string() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense row-major matrix over GF(2); each row is padded to a whole number of 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_((cols + 63) / 64), data_(rows * stride_) {}

  static BitMatrix identity(std::size_t n);
  static BitMatrix from_rows(std::span<const BitVector> rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t stride() const { return stride_; }

  bool get(std::size_t r, std::size_t c) const { return (data_[r * stride_ + c / 64] >> (c % 64)) & 1U; }
  void set(std::size_t r, std::size_t c, bool v) {
    auto& w = data_[r * stride_ + c / 64];
    const std::uint64_t m = std::uint64_t{1} << (c % 64);
    w = v ? (w | m) : (w & ~m);
  }
  void flip(std::size_t r, std::size_t c) { data_[r * stride_ + c / 64] ^= std::uint64_t{1} << (c % 64); }

  std::span<std::uint64_t> row_words(std::size_t r) { return {data_.data() + r * stride_, stride_}; }
  std::span<const std::uint64_t> row_words(std::size_t r) const { return {data_.data() + r * stride_, stride_}; }

  BitVector row(std::size_t r) const;
  void set_row(std::size_t r, const BitVector& v);
  BitVector column(std::size_t c) const;

  void xor_row_into(std::size_t dst, std::size_t src) {
    auto* d = data_.data() + dst * stride_;
    const auto* s = data_.data() + src * stride_;
    for (std::size_t i = 0; i < stride_; ++i) d[i] ^= s[i];
  }
  void swap_rows(std::size_t a, std::size_t b);
  bool row_is_zero(std::size_t r) const;

  BitMatrix transpose() const;
  BitMatrix operator*(const BitMatrix& o) const;
  /// M v^T as a column, returned as a vector of length rows().
  BitVector mul_vec(const BitVector& v) const;
  /// v M for a row vector of length rows().
  BitVector left_mul(const BitVector& v) const;
  bool is_zero() const;
  /// Keeps rows [first, first+count).
  BitMatrix row_range(std::size_t first, std::size_t count) const;
  BitMatrix vstack(const BitMatrix& below) const;
  BitMatrix hstack(const BitMatrix& right) const;

  /// One row per line of '0'/'1' characters.
  std::string to_string() const;
  static BitMatrix parse(const std::string& text);

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> data_;
};

}  // namespace edonk
