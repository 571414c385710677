#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "edonk/bits.hpp"
#include "edonk/gf2m.hpp"
#include "edonk/subspace.hpp"

namespace edonk::rankmetric {

/// A word of GF(2^m)^n.
using Word = gf2m::Vector;

/// m x n binary matrix whose column j holds the coordinates of x_j.
BitMatrix matrix_of(const gf2m::Field& field, std::span<const gf2m::Element> x);

/// Rank of matrix_of(x); equals support(x).dim().
std::size_t rank_weight(std::span<const gf2m::Element> x);

Subspace support(std::span<const gf2m::Element> x);

/// {s v : v in V}. Throws std::invalid_argument for s = 0.
Subspace scale(const gf2m::Field& field, const gf2m::Element& s, const Subspace& v);

/// span{u v : u in U, v in V}.
Subspace product(const gf2m::Field& field, const Subspace& u, const Subspace& v);

Subspace intersect(const Subspace& u, const Subspace& v);

Subspace sum(const Subspace& u, const Subspace& v);

struct LrpcDecoding {
  Word error;
  Subspace error_support;     // the space E the error was constrained to
  std::size_t ambiguity = 0;  // dimension of the solution kernel; 0 means the error is unique
};

/// Generic LRPC decoding of y against a parity-check matrix whose entries lie in F.
///
/// Returns nullopt if the recovered support has dimension larger than max_rank or the constrained
/// system is inconsistent; the caller decides whether to retry.
std::optional<LrpcDecoding> lrpc_decode(const gf2m::Field& field, const gf2m::Matrix& h, std::span<const gf2m::Element> y,
                                        const Subspace& f, std::size_t max_rank);

}  // namespace edonk::rankmetric
