#include "edonk/subspace.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace edonk::rankmetric {

Subspace Subspace::span(std::span<const gf2m::Element> elems) {
  Subspace s;
  for (const auto& e : elems) s.insert(e);
  return s;
}

gf2m::Element Subspace::reduce(gf2m::Element x) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (x.bit(pivots_[i])) x += basis_[i];
  return x;
}

bool Subspace::insert(gf2m::Element x) {
  x = reduce(x);
  if (x.is_zero()) return false;
  const unsigned p = x.lowest_bit();
  for (auto& b : basis_)
    if (b.bit(p)) b += x;
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, p);
  basis_.insert(basis_.begin() + pos, x);
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(), [this](const auto& b) { return contains(b); });
}

std::optional<std::vector<bool>> Subspace::coordinates(const gf2m::Element& x) const {
  std::vector<bool> c(basis_.size());
  gf2m::Element r = x;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (r.bit(pivots_[i])) {
      c[i] = true;
      r += basis_[i];
    }
  }
  if (!r.is_zero()) return std::nullopt;
  return c;
}

std::uint64_t Subspace::index_of(const gf2m::Element& x) const {
  if (basis_.size() > 64) throw std::length_error("index_of: dimension exceeds 64");
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (x.bit(pivots_[i])) idx |= std::uint64_t{1} << i;
  return idx;
}

gf2m::Element Subspace::element_at(std::uint64_t index) const {
  gf2m::Element e;
  for (std::size_t i = 0; i < basis_.size() && i < 64; ++i)
    if ((index >> i) & 1U) e += basis_[i];
  return e;
}

std::vector<gf2m::Element> Subspace::enumerate() const {
  if (basis_.size() > 24) throw std::length_error("enumerate: dimension exceeds 24");
  const std::size_t n = std::size_t{1} << basis_.size();
  std::vector<gf2m::Element> out(n);
  // out[i] = out[i without its top bit] + basis[top bit]
  for (std::size_t i = 1; i < n; ++i) {
    const unsigned top = 63 - std::countl_zero(static_cast<std::uint64_t>(i));
    out[i] = out[i ^ (std::size_t{1} << top)] + basis_[top];
  }
  return out;
}

}  // namespace edonk::rankmetric
