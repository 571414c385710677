#include <set>
#include <vector>

#include "doctest.h"
#include "edonk/f2linalg.hpp"
#include "edonk/subspace.hpp"
#include "oracles.hpp"

using edonk::BitMatrix;
using edonk::BitVector;
using edonk::Rng;
using edonk::gf2m::Element;
using edonk::gf2m::Field;
namespace la = edonk::f2linalg;

namespace {

BitVector bits(std::size_t n, std::uint64_t v) {
  BitVector b(n);
  for (std::size_t i = 0; i < n; ++i) b.set(i, (v >> i) & 1U);
  return b;
}

/// All x with M x^T = b^T, by enumeration; cols <= 16.
std::vector<BitVector> brute_solutions(const BitMatrix& m, const BitVector& b) {
  std::vector<BitVector> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << m.cols()); ++v) {
    const BitVector x = bits(m.cols(), v);
    if (m.mul_vec(x) == b) out.push_back(x);
  }
  return out;
}

/// Every vector in particular + rowspan(kernel).
std::set<std::string> affine_set(const BitVector& particular, const BitMatrix& kernel) {
  std::set<std::string> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << kernel.rows()); ++v) {
    BitVector x = particular;
    for (std::size_t i = 0; i < kernel.rows(); ++i)
      if ((v >> i) & 1U) x ^= kernel.row(i);
    out.insert(x.to_string());
  }
  return out;
}

}  // namespace

TEST_SUITE("f2linalg") {
  TEST_CASE("rref examples") {
    const auto id = la::rref(BitMatrix::identity(5));
    CHECK(id.reduced == BitMatrix::identity(5));
    CHECK(id.pivots == std::vector<std::size_t>{0, 1, 2, 3, 4});
    CHECK(id.rank == 5);

    const auto zero = la::rref(BitMatrix(3, 4));
    CHECK(zero.rank == 0);
    CHECK(zero.pivots.empty());
    CHECK(zero.reduced.is_zero());

    const auto r = la::rref(BitMatrix::parse("110\n101\n"));
    CHECK(r.rank == 2);
    CHECK(r.pivots == std::vector<std::size_t>{0, 1});
    CHECK(r.reduced == BitMatrix::parse("101\n011\n"));
  }

  TEST_CASE("rref is idempotent and preserves the row space") {
    Rng rng(1);
    for (int t = 0; t < 200; ++t) {
      const auto m = la::random_matrix(1 + rng() % 8, 1 + rng() % 12, rng);
      const auto r = la::rref(m);
      CHECK(la::rref(r.reduced).reduced == r.reduced);
      CHECK(la::rank(m.vstack(r.reduced)) == r.rank);
    }
  }

  TEST_CASE("nullspace matches brute-force solution counts") {
    CHECK(la::nullspace_basis(BitMatrix::identity(4)).rows() == 0);
    CHECK(la::nullspace_basis(BitMatrix(2, 6)).rows() == 6);
    CHECK(la::rank(la::nullspace_basis(BitMatrix(2, 6))) == 6);

    Rng rng(2);
    int rank3 = 0;
    for (int t = 0; t < 300; ++t) {
      const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 12;
      const auto m = la::random_matrix(rows, cols, rng);
      const auto ns = la::nullspace_basis(m);
      const auto rk = la::rank(m);
      CHECK(ns.rows() == cols - rk);
      CHECK(la::rank(ns) == ns.rows());
      for (std::size_t i = 0; i < ns.rows(); ++i) CHECK(m.mul_vec(ns.row(i)).is_zero());
      CHECK(brute_solutions(m, BitVector(rows)).size() == (std::size_t{1} << (cols - rk)));
      if (rows == 3 && cols == 5 && rk == 3) ++rank3;
    }
    // A 3 x 5 rank-3 instance: two null vectors, verified by multiplication.
    const auto m = BitMatrix::parse("10010\n01001\n00111\n");
    const auto ns = la::nullspace_basis(m);
    REQUIRE(ns.rows() == 2);
    for (std::size_t i = 0; i < 2; ++i) CHECK(m.mul_vec(ns.row(i)).is_zero());
  }

  TEST_CASE("solve_affine against enumeration") {
    const auto id = BitMatrix::identity(5);
    const auto b = bits(5, 0b10110);
    const auto s = la::solve_affine(id, b);
    REQUIRE(s.particular);
    CHECK(*s.particular == b);
    CHECK(s.kernel.rows() == 0);

    const auto m = BitMatrix::parse("11\n11\n");
    CHECK(brute_solutions(m, bits(2, 0b10)).empty());
    CHECK_FALSE(la::solve_affine(m, bits(2, 0b10)).particular);
    CHECK_THROWS(la::solve_affine(m, bits(3, 0)));

    Rng rng(3);
    for (int t = 0; t < 300; ++t) {
      const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 10;
      const auto a = la::random_matrix(rows, cols, rng);
      BitVector rhs(rows);
      for (std::size_t i = 0; i < rows; ++i) rhs.set(i, rng() & 1U);
      const auto brute = brute_solutions(a, rhs);
      const auto sol = la::solve_affine(a, rhs);
      if (brute.empty()) {
        CHECK_FALSE(sol.particular);
        continue;
      }
      REQUIRE(sol.particular);
      std::set<std::string> expect;
      for (const auto& x : brute) expect.insert(x.to_string());
      CHECK(affine_set(*sol.particular, sol.kernel) == expect);
      const auto zero = la::solve_affine(a, BitVector(rows));
      REQUIRE(zero.particular);
      CHECK(zero.particular->is_zero());
    }
  }

  TEST_CASE("orthogonality") {
    CHECK(la::is_orthogonal(BitMatrix::identity(7)));
    CHECK(la::is_orthogonal(BitMatrix::parse("010\n001\n100\n")));
    CHECK_FALSE(la::is_orthogonal(BitMatrix::parse("11\n01\n")));
    CHECK_THROWS(la::is_orthogonal(BitMatrix(2, 3)));

    Rng rng(4);
    const auto perm = la::random_orthogonal(12, 0, rng);
    for (std::size_t i = 0; i < 12; ++i) {
      CHECK(perm.row(i).weight() == 1);
      CHECK(perm.column(i).weight() == 1);
    }

    std::set<std::string> seen;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Rng r(seed);
      const auto p = la::random_orthogonal(40, r);
      CHECK(p * p.transpose() == BitMatrix::identity(40));
      seen.insert(p.to_string());
      Rng again(seed);
      CHECK(la::random_orthogonal(40, again) == p);
    }
    CHECK(seen.size() == 100);
  }

  TEST_CASE("even column weight sampling") {
    Rng rng(5);
    for (int t = 0; t < 1000; ++t) {
      const auto m = la::random_even_colweight(2 + rng() % 6, 1 + rng() % 9, rng);
      for (std::size_t j = 0; j < m.cols(); ++j) REQUIRE(m.column(j).weight() % 2 == 0);
    }
    std::set<std::string> cols;
    for (int t = 0; t < 200; ++t) {
      const auto m = la::random_even_colweight(2, 4, rng);
      for (std::size_t j = 0; j < 4; ++j) cols.insert(m.column(j).to_string());
    }
    CHECK(cols == std::set<std::string>{"00", "11"});
    CHECK_THROWS(la::random_even_colweight(1, 3, rng));
  }

  TEST_CASE("expanded system solutions equal the constrained brute force") {
    const Field f(8);
    Rng rng(6);
    int consistent = 0;
    for (int t = 0; t < 100; ++t) {
      const std::size_t r = 1 + rng() % 2, n = 1 + rng() % 3, tdim = 1 + rng() % 2;
      std::vector<Element> v;
      while (v.size() < tdim) {
        v.push_back(f.random_nonzero(rng));
        if (edonk::rankmetric::Subspace::span(v).dim() != v.size()) v.pop_back();
      }
      edonk::gf2m::Matrix a(r, n);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = f.random(rng);
      // Half the instances get a right-hand side that has a solution in V^N.
      edonk::gf2m::Vector x0(n);
      for (auto& x : x0) x = rng() & 1U ? v[0] : Element{};
      edonk::gf2m::Vector b = t % 2 ? f.mul_transposed(a, x0) : edonk::gf2m::Vector(r);
      if (t % 4 == 3) b[0] = f.random(rng);

      std::set<edonk::gf2m::Vector> brute;
      const auto members = oracle::span_set(v);
      const std::vector<Element> vs(members.begin(), members.end());
      const std::size_t q = vs.size();
      std::size_t total = 1;
      for (std::size_t j = 0; j < n; ++j) total *= q;
      for (std::size_t code = 0; code < total; ++code) {
        edonk::gf2m::Vector x(n);
        std::size_t c = code;
        for (std::size_t j = 0; j < n; ++j, c /= q) x[j] = vs[c % q];
        if (f.mul_transposed(a, x) == b) brute.insert(x);
      }

      const auto sys = la::expand_affine_system(f, a, b, v);
      CHECK(sys.lhs.rows() == r * 8);
      CHECK(sys.lhs.cols() == n * tdim);
      std::set<edonk::gf2m::Vector> expanded;
      for (std::uint64_t bitsv = 0; bitsv < (std::uint64_t{1} << sys.lhs.cols()); ++bitsv) {
        const auto xb = bits(sys.lhs.cols(), bitsv);
        if (sys.lhs.mul_vec(xb) == sys.rhs) expanded.insert(la::combine(v, xb));
      }
      CHECK(expanded == brute);

      const auto proj = la::expand_affine_system_projected(f, a, b, v);
      std::set<edonk::gf2m::Vector> projected;
      for (std::uint64_t bitsv = 0; bitsv < (std::uint64_t{1} << proj.system.lhs.cols()); ++bitsv) {
        const auto xb = bits(proj.system.lhs.cols(), bitsv);
        if (proj.system.lhs.mul_vec(xb) == proj.system.rhs) projected.insert(la::combine(v, xb));
      }
      CHECK(projected == brute);
      const auto cs = la::solve_constrained(f, a, b, v);
      CHECK(static_cast<bool>(cs.particular) == !brute.empty());
      if (cs.particular) {
        ++consistent;
        CHECK(brute.count(*cs.particular) == 1);
        CHECK((std::size_t{1} << cs.kernel.rows()) == brute.size());
      }
    }
    CHECK(consistent > 0);

    // A = 0, b = 0: every assignment solves.
    edonk::gf2m::Matrix z(2, 3);
    const std::vector<Element> v{Element::from_u64(1), Element::from_u64(2)};
    const auto sys = la::expand_affine_system(f, z, edonk::gf2m::Vector(2), v);
    CHECK(sys.lhs.is_zero());
    CHECK(sys.rhs.is_zero());

    const std::vector<Element> dependent{Element::from_u64(3), Element::from_u64(3)};
    CHECK_THROWS(la::expand_affine_system(f, z, edonk::gf2m::Vector(2), dependent));
  }

  TEST_CASE("expansion over the whole field matches the unconstrained solutions") {
    const Field f(4);
    Rng rng(8);
    std::vector<Element> basis;
    for (unsigned i = 0; i < 4; ++i) basis.push_back(Element::from_u64(1U << i));
    for (int t = 0; t < 20; ++t) {
      edonk::gf2m::Matrix a(1, 2);
      a(0, 0) = f.random(rng);
      a(0, 1) = f.random(rng);
      const edonk::gf2m::Vector b{f.random(rng)};
      std::size_t brute = 0;
      for (std::uint64_t x = 0; x < 16; ++x)
        for (std::uint64_t y = 0; y < 16; ++y)
          if (f.mul(a(0, 0), Element::from_u64(x)) + f.mul(a(0, 1), Element::from_u64(y)) == b[0]) ++brute;
      const auto sys = la::expand_affine_system(f, a, b, basis);
      CHECK(brute_solutions(sys.lhs, sys.rhs).size() == brute);
    }
  }
}
