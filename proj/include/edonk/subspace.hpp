#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "edonk/gf2m.hpp"

namespace edonk::rankmetric {

/// An F2-subspace of GF(2^m), held in canonical reduced echelon form.
///
/// The pivot of each basis vector is its lowest set coefficient, no other basis vector has that
/// coefficient set, and the basis is sorted by pivot. Equal subspaces therefore compare equal,
/// and the coordinates of a member are read straight off its pivot bits.
class Subspace {
 public:
  Subspace() = default;

  static Subspace span(std::span<const gf2m::Element> elems);

  /// Returns true if the dimension grew.
  bool insert(gf2m::Element x);

  std::size_t dim() const { return basis_.size(); }
  const std::vector<gf2m::Element>& basis() const { return basis_; }
  const std::vector<unsigned>& pivots() const { return pivots_; }

  gf2m::Element reduce(gf2m::Element x) const;
  bool contains(const gf2m::Element& x) const { return reduce(x).is_zero(); }
  bool contains(const Subspace& other) const;

  /// Coefficients of x in basis(); nullopt if x is not a member.
  std::optional<std::vector<bool>> coordinates(const gf2m::Element& x) const;
  /// Coefficient integer of a member (bit i = coefficient of basis()[i]); requires dim() <= 64.
  std::uint64_t index_of(const gf2m::Element& x) const;
  /// Inverse of index_of.
  gf2m::Element element_at(std::uint64_t index) const;
  /// All 2^dim elements in increasing coefficient-integer order; dim() <= 24.
  std::vector<gf2m::Element> enumerate() const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  std::vector<gf2m::Element> basis_;
  std::vector<unsigned> pivots_;
};

}  // namespace edonk::rankmetric
