#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "edonk/bits.hpp"
#include "edonk/gf2m.hpp"

namespace edonk::f2linalg {

struct Rref {
  BitMatrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of row i
  std::size_t rank = 0;
};

/// Leftmost-pivot Gauss-Jordan elimination.
Rref rref(BitMatrix m);
std::size_t rank(const BitMatrix& m);

/// Rows span {x : M x^T = 0}, one row per free column in ascending column order.
BitMatrix nullspace_basis(const BitMatrix& m);

struct AffineSolution {
  std::optional<BitVector> particular;  // free variables set to zero
  BitMatrix kernel;
};

/// Solutions of M x^T = b^T as particular + rowspan(kernel). Throws on dimension mismatch.
AffineSolution solve_affine(const BitMatrix& m, const BitVector& b);

/// P P^T == I; throws on non-square input.
bool is_orthogonal(const BitMatrix& p);

/// Random permutation followed by `rounds` transvections I + u u^T with even-weight u.
BitMatrix random_orthogonal(std::size_t n, std::size_t rounds, Rng& rng);
inline BitMatrix random_orthogonal(std::size_t n, Rng& rng) { return random_orthogonal(n, 2 * n, rng); }

/// Uniform matrix with every column of even Hamming weight. Requires rows >= 2.
BitMatrix random_even_colweight(std::size_t rows, std::size_t cols, Rng& rng);

BitMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng);

/// Binary expansion of A x^T = b^T with x_j = sum_i x_{ji} v_i.
///
/// Unknown x_{ji} is column j*t + i. Equation (i, l), the l-th coordinate of the i-th
/// equation, is row i*m + l.
struct ExpandedSystem {
  BitMatrix lhs;
  BitVector rhs;
};

ExpandedSystem expand_affine_system(const gf2m::Field& field, const gf2m::Matrix& a, std::span<const gf2m::Element> b,
                                    std::span<const gf2m::Element> v_basis);

/// Same solution set as expand_affine_system, but each equation is written in coordinates of
/// a basis of W = span{a_ij v_k, b_i} instead of all m coordinates. Row i*dim(W) + l.
struct ProjectedSystem {
  ExpandedSystem system;
  std::vector<gf2m::Element> target_basis;
};

ProjectedSystem expand_affine_system_projected(const gf2m::Field& field, const gf2m::Matrix& a,
                                               std::span<const gf2m::Element> b,
                                               std::span<const gf2m::Element> v_basis);

/// Solves A x^T = b^T over x in V^N.
struct ConstrainedSolution {
  std::optional<gf2m::Vector> particular;
  BitMatrix kernel;  // binary, columns j*t + i
};

ConstrainedSolution solve_constrained(const gf2m::Field& field, const gf2m::Matrix& a, std::span<const gf2m::Element> b,
                                      std::span<const gf2m::Element> v_basis);

/// Maps a flattened coefficient vector (j-major, i-minor) back to field elements.
gf2m::Vector combine(std::span<const gf2m::Element> v_basis, const BitVector& coeffs);

}  // namespace edonk::f2linalg
