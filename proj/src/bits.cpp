#include "edonk/bits.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace edonk {

std::string BitVector::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::from_rows(std::span<const BitVector> rows, std::size_t cols) {
  BitMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

BitVector BitMatrix::row(std::size_t r) const {
  BitVector v(cols_);
  auto src = row_words(r);
  std::copy(src.begin(), src.end(), v.words().begin());
  return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
  if (v.size() != cols_) throw std::invalid_argument("set_row: length mismatch");
  auto src = v.words();
  std::copy(src.begin(), src.end(), row_words(r).begin());
}

BitVector BitMatrix::column(std::size_t c) const {
  BitVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    if (get(r, c)) v.set(r, true);
  return v;
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  auto ra = row_words(a);
  auto rb = row_words(b);
  std::swap_ranges(ra.begin(), ra.end(), rb.begin());
}

bool BitMatrix::row_is_zero(std::size_t r) const {
  for (auto w : row_words(r))
    if (w) return false;
  return true;
}

bool BitMatrix::is_zero() const {
  for (auto w : data_)
    if (w) return false;
  return true;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    auto words = row_words(r);
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
      std::uint64_t w = words[wi];
      while (w) {
        const unsigned b = static_cast<unsigned>(std::countr_zero(w));
        t.set(wi * 64 + b, r, true);
        w &= w - 1;
      }
    }
  }
  return t;
}

BitMatrix BitMatrix::operator*(const BitMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("BitMatrix product: dimension mismatch");
  BitMatrix p(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    auto dst = p.row_words(r);
    for (std::size_t k = 0; k < cols_; ++k) {
      if (!get(r, k)) continue;
      auto src = o.row_words(k);
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
    }
  }
  return p;
}

BitVector BitMatrix::mul_vec(const BitVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("mul_vec: dimension mismatch");
  BitVector out(rows_);
  auto vw = v.words();
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    auto rw = row_words(r);
    for (std::size_t i = 0; i < stride_; ++i) acc ^= rw[i] & vw[i];
    if (std::popcount(acc) & 1) out.set(r, true);
  }
  return out;
}

BitVector BitMatrix::left_mul(const BitVector& v) const {
  if (v.size() != rows_) throw std::invalid_argument("left_mul: dimension mismatch");
  BitVector out(cols_);
  auto ow = out.words();
  for (std::size_t r = 0; r < rows_; ++r) {
    if (!v.get(r)) continue;
    auto rw = row_words(r);
    for (std::size_t i = 0; i < stride_; ++i) ow[i] ^= rw[i];
  }
  return out;
}

BitMatrix BitMatrix::row_range(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw std::out_of_range("row_range");
  BitMatrix m(count, cols_);
  std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(first * stride_), count * stride_, m.data_.begin());
  return m;
}

BitMatrix BitMatrix::vstack(const BitMatrix& below) const {
  if (below.cols_ != cols_) throw std::invalid_argument("vstack: column mismatch");
  BitMatrix m(rows_ + below.rows_, cols_);
  std::copy(data_.begin(), data_.end(), m.data_.begin());
  std::copy(below.data_.begin(), below.data_.end(), m.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return m;
}

BitMatrix BitMatrix::hstack(const BitMatrix& right) const {
  if (right.rows_ != rows_) throw std::invalid_argument("hstack: row mismatch");
  BitMatrix m(rows_, cols_ + right.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) m.set(r, c, true);
    for (std::size_t c = 0; c < right.cols_; ++c)
      if (right.get(r, c)) m.set(r, cols_ + c, true);
  }
  return m;
}

std::string BitMatrix::to_string() const {
  std::string s;
  s.reserve(rows_ * (cols_ + 1));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) s.push_back(get(r, c) ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

BitMatrix BitMatrix::parse(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) lines.push_back(line);
  const std::size_t cols = lines.empty() ? 0 : lines.front().size();
  BitMatrix m(lines.size(), cols);
  for (std::size_t r = 0; r < lines.size(); ++r) {
    if (lines[r].size() != cols) throw std::invalid_argument("BitMatrix::parse: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const char ch = lines[r][c];
      if (ch != '0' && ch != '1') throw std::invalid_argument("BitMatrix::parse: expected '0' or '1'");
      m.set(r, c, ch == '1');
    }
  }
  return m;
}

}  // namespace edonk
