#include "edonk/rankmetric.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "edonk/f2linalg.hpp"

namespace edonk::rankmetric {

using gf2m::Element;

BitMatrix matrix_of(const gf2m::Field& field, std::span<const Element> x) {
  BitMatrix mat(field.degree(), x.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    for (unsigned l = 0; l < field.degree(); ++l)
      if (x[j].bit(l)) mat.set(l, j, true);
  return mat;
}

Subspace support(std::span<const Element> x) { return Subspace::span(x); }

std::size_t rank_weight(std::span<const Element> x) { return support(x).dim(); }

Subspace scale(const gf2m::Field& field, const Element& s, const Subspace& v) {
  if (s.is_zero()) throw std::invalid_argument("scale: zero scalar");
  Subspace out;
  for (const auto& b : v.basis()) out.insert(field.mul(s, b));
  return out;
}

Subspace product(const gf2m::Field& field, const Subspace& u, const Subspace& v) {
  Subspace out;
  for (const auto& a : u.basis())
    for (const auto& b : v.basis()) out.insert(field.mul(a, b));
  return out;
}

Subspace sum(const Subspace& u, const Subspace& v) {
  Subspace out = u;
  for (const auto& b : v.basis()) out.insert(b);
  return out;
}

Subspace intersect(const Subspace& u, const Subspace& v) {
  // x in U and V  <=>  x = sum y_i u_i with sum y_i u_i in V, i.e. the reductions of the u_i
  // modulo V are dependent with coefficients y.
  const auto& ub = u.basis();
  if (ub.empty() || v.dim() == 0) return {};
  std::vector<Element> residues;
  unsigned top = 1;
  for (const auto& b : ub) {
    residues.push_back(v.reduce(b));
    top = std::max(top, static_cast<unsigned>(residues.back().degree() + 1));
  }
  BitMatrix rows(ub.size(), top);
  for (std::size_t i = 0; i < ub.size(); ++i)
    for (unsigned l = 0; l < top; ++l)
      if (residues[i].bit(l)) rows.set(i, l, true);
  const BitMatrix dependencies = f2linalg::nullspace_basis(rows.transpose());
  Subspace out;
  for (std::size_t k = 0; k < dependencies.rows(); ++k) {
    Element x;
    for (std::size_t i = 0; i < ub.size(); ++i)
      if (dependencies.get(k, i)) x += ub[i];
    out.insert(x);
  }
  return out;
}

std::optional<LrpcDecoding> lrpc_decode(const gf2m::Field& field, const gf2m::Matrix& h, std::span<const Element> y,
                                        const Subspace& f, std::size_t max_rank) {
  if (h.cols() != y.size()) throw std::invalid_argument("lrpc_decode: word length mismatch");
  if (f.dim() == 0) throw std::invalid_argument("lrpc_decode: parity-check support is zero");
  const gf2m::Vector s = field.mul_transposed(h, y);
  const Subspace syndrome_support = support(s);

  LrpcDecoding out;
  if (syndrome_support.dim() == 0) {
    out.error = gf2m::Vector(y.size());
    return out;
  }

  // E = intersection over f in basis(F) of f^{-1} Supp(s)
  Subspace e_space = scale(field, field.inv(f.basis().front()), syndrome_support);
  for (std::size_t i = 1; i < f.dim(); ++i)
    e_space = intersect(e_space, scale(field, field.inv(f.basis()[i]), syndrome_support));
  if (e_space.dim() == 0 || e_space.dim() > max_rank) return std::nullopt;

  const auto sol = f2linalg::solve_constrained(field, h, s, e_space.basis());
  if (!sol.particular) return std::nullopt;
  out.error = *sol.particular;
  out.error_support = std::move(e_space);
  out.ambiguity = sol.kernel.rows();
  return out;
}

}  // namespace edonk::rankmetric
