#include "edonk/f2linalg.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>

#include "edonk/subspace.hpp"

namespace edonk::f2linalg {

using gf2m::Element;

Rref rref(BitMatrix m) {
  Rref out;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && !m.get(pivot, c)) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(rank, pivot);
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (r != rank && m.get(r, c)) m.xor_row_into(r, rank);
    out.pivots.push_back(c);
    ++rank;
  }
  out.rank = rank;
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const BitMatrix& m) { return rref(m).rank; }

namespace {

BitMatrix kernel_from_rref(const BitMatrix& reduced, const std::vector<std::size_t>& pivots, std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  BitMatrix k(cols - pivots.size(), cols);
  std::size_t row = 0;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    k.set(row, f, true);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      if (reduced.get(i, f)) k.set(row, pivots[i], true);
    ++row;
  }
  return k;
}

}  // namespace

BitMatrix nullspace_basis(const BitMatrix& m) {
  const Rref r = rref(m);
  return kernel_from_rref(r.reduced, r.pivots, m.cols());
}

AffineSolution solve_affine(const BitMatrix& m, const BitVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_affine: right-hand side length mismatch");
  BitMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto src = m.row_words(r);
    std::copy(src.begin(), src.end(), aug.row_words(r).begin());
    if (b.get(r)) aug.set(r, m.cols(), true);
  }
  Rref r = rref(std::move(aug));
  AffineSolution sol;
  const bool inconsistent = !r.pivots.empty() && r.pivots.back() == m.cols();
  if (inconsistent) r.pivots.pop_back();
  sol.kernel = kernel_from_rref(r.reduced, r.pivots, m.cols());
  if (!inconsistent) {
    BitVector x(m.cols());
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
      if (r.reduced.get(i, m.cols())) x.set(r.pivots[i], true);
    sol.particular = std::move(x);
  }
  return sol;
}

bool is_orthogonal(const BitMatrix& p) {
  if (p.rows() != p.cols()) throw std::invalid_argument("is_orthogonal: matrix is not square");
  return p * p.transpose() == BitMatrix::identity(p.rows());
}

BitMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  BitMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto w = m.row_words(r);
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::size_t valid = std::min<std::size_t>(64, cols - i * 64);
      w[i] = valid == 64 ? rng() : rng() & ((std::uint64_t{1} << valid) - 1);
    }
  }
  return m;
}

BitMatrix random_orthogonal(std::size_t n, std::size_t rounds, Rng& rng) {
  if (n == 0) throw std::invalid_argument("random_orthogonal: n must be positive");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
  BitMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) p.set(i, perm[i], true);
  if (n < 2) return p;
  for (std::size_t k = 0; k < rounds; ++k) {
    // u^T u = 0, so (I + u u^T) is an involution and orthogonal.
    BitVector u = random_matrix(1, n, rng).row(0);
    if (u.weight() & 1U) u.flip(uniform_below(rng, n));
    for (std::size_t r = 0; r < n; ++r) {
      std::uint64_t acc = 0;
      auto rw = p.row_words(r);
      auto uw = u.words();
      for (std::size_t i = 0; i < rw.size(); ++i) acc ^= rw[i] & uw[i];
      if (std::popcount(acc) & 1)
        for (std::size_t i = 0; i < rw.size(); ++i) rw[i] ^= uw[i];
    }
  }
  return p;
}

BitMatrix random_even_colweight(std::size_t rows, std::size_t cols, Rng& rng) {
  if (rows < 2) throw std::invalid_argument("random_even_colweight: need at least two rows");
  BitMatrix m = random_matrix(rows - 1, cols, rng);
  BitVector parity(cols);
  for (std::size_t r = 0; r + 1 < rows; ++r) parity ^= m.row(r);
  BitMatrix last(1, cols);
  last.set_row(0, parity);
  return m.vstack(last);
}

namespace {

void check_basis(std::span<const Element> v_basis) {
  if (rankmetric::Subspace::span(v_basis).dim() != v_basis.size())
    throw std::invalid_argument("expand_affine_system: basis elements are F2-dependent");
}

void check_shapes(const gf2m::Matrix& a, std::span<const Element> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("expand_affine_system: right-hand side length mismatch");
}

}  // namespace

ExpandedSystem expand_affine_system(const gf2m::Field& field, const gf2m::Matrix& a, std::span<const Element> b,
                                    std::span<const Element> v_basis) {
  check_shapes(a, b);
  check_basis(v_basis);
  const std::size_t m = field.degree();
  const std::size_t t = v_basis.size();
  ExpandedSystem sys{BitMatrix(a.rows() * m, a.cols() * t), BitVector(a.rows() * m)};
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < t; ++k) {
        const Element p = field.mul(a(i, j), v_basis[k]);
        for (std::size_t l = 0; l < m; ++l)
          if (p.bit(l)) sys.lhs.set(i * m + l, j * t + k, true);
      }
    }
    for (std::size_t l = 0; l < m; ++l)
      if (b[i].bit(l)) sys.rhs.set(i * m + l, true);
  }
  return sys;
}

ProjectedSystem expand_affine_system_projected(const gf2m::Field& field, const gf2m::Matrix& a,
                                               std::span<const Element> b, std::span<const Element> v_basis) {
  check_shapes(a, b);
  check_basis(v_basis);
  const std::size_t t = v_basis.size();

  // Products depend only on the coefficient value; public and parity-check matrices repeat values heavily.
  std::map<Element, std::vector<Element>> products;
  rankmetric::Subspace target;
  for (const auto& aij : a.entries()) {
    if (aij.is_zero() || products.contains(aij)) continue;
    std::vector<Element> row(t);
    for (std::size_t k = 0; k < t; ++k) {
      row[k] = field.mul(aij, v_basis[k]);
      target.insert(row[k]);
    }
    products.emplace(aij, std::move(row));
  }
  for (const auto& bi : b) target.insert(bi);

  const std::size_t d = target.dim();
  const auto& piv = target.pivots();
  ProjectedSystem out{{BitMatrix(a.rows() * d, a.cols() * t), BitVector(a.rows() * d)}, target.basis()};
  auto& sys = out.system;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      const auto& row = products.at(a(i, j));
      for (std::size_t k = 0; k < t; ++k)
        for (std::size_t l = 0; l < d; ++l)
          if (row[k].bit(piv[l])) sys.lhs.set(i * d + l, j * t + k, true);
    }
    for (std::size_t l = 0; l < d; ++l)
      if (b[i].bit(piv[l])) sys.rhs.set(i * d + l, true);
  }
  return out;
}

gf2m::Vector combine(std::span<const Element> v_basis, const BitVector& coeffs) {
  const std::size_t t = v_basis.size();
  if (t == 0) return {};
  if (coeffs.size() % t) throw std::invalid_argument("combine: length is not a multiple of the basis size");
  gf2m::Vector x(coeffs.size() / t);
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t k = 0; k < t; ++k)
      if (coeffs.get(j * t + k)) x[j] += v_basis[k];
  return x;
}

ConstrainedSolution solve_constrained(const gf2m::Field& field, const gf2m::Matrix& a, std::span<const Element> b,
                                      std::span<const Element> v_basis) {
  const auto proj = expand_affine_system_projected(field, a, b, v_basis);
  AffineSolution sol = solve_affine(proj.system.lhs, proj.system.rhs);
  ConstrainedSolution out;
  out.kernel = std::move(sol.kernel);
  if (sol.particular) {
    if (v_basis.empty())
      out.particular = gf2m::Vector(a.cols());
    else
      out.particular = combine(v_basis, *sol.particular);
  }
  return out;
}

}  // namespace edonk::f2linalg
