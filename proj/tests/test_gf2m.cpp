#include <bit>
#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "edonk/gf2m.hpp"
#include "oracles.hpp"

using edonk::Rng;
using edonk::gf2m::Element;
using edonk::gf2m::Field;

namespace {

Element el(std::uint64_t v) { return Element::from_u64(v); }

}  // namespace

TEST_SUITE("gf2m") {
  TEST_CASE("addition is coefficient-wise xor") {
    const Field f(8);
    CHECK(f.add(el(0x53), el(0x53)).is_zero());
    CHECK(f.add(el(0x53), el(0)) == el(0x53));
    CHECK(f.add(el(0x53), el(0x0F)) == el(0x5C));
    CHECK_THROWS_AS(f.add(el(0x100), el(1)), std::invalid_argument);
  }

  TEST_CASE("aes field product and inverse match the oracles") {
    const Field f(8);
    REQUIRE(f.reduction_tail() == 0x1B);
    CHECK(oracle::mul(8, 0x1B, el(0x53), el(0xCA)) == el(1));
    CHECK(f.mul(el(0x53), el(0xCA)) == el(1));
    CHECK(f.mul(el(0x53), el(1)) == el(0x53));
    CHECK(f.mul(el(0x53), el(0)).is_zero());

    Element found;
    int hits = 0;
    for (std::uint64_t y = 1; y < 256; ++y)
      if (oracle::mul(8, 0x1B, el(0x53), el(y)) == el(1)) {
        found = el(y);
        ++hits;
      }
    CHECK(hits == 1);
    CHECK(found == el(0xCA));
    CHECK(f.inv(el(0x53)) == found);
    CHECK(f.inv(el(1)) == el(1));
    CHECK_THROWS_AS(f.inv(el(0)), std::domain_error);
  }

  TEST_CASE("fixed moduli are the documented ones and the small ones are irreducible") {
    CHECK(Field(128).reduction_tail() == 0x87);
    CHECK(Field(192).reduction_tail() == 0x87);
    CHECK(Field(16).reduction_tail() == 0x2B);
    CHECK(Field(8).reduction_tail() == 0x1B);
    // Oracle: x^m + tail has no factor of degree <= m/2, checked by exhaustive trial division.
    for (unsigned m : {8U, 16U}) {
      const std::uint64_t tail = Field(m).reduction_tail();
      bool reducible = false;
      for (std::uint64_t d = 2; d < (std::uint64_t{1} << (m / 2 + 1)) && !reducible; ++d) {
        // Remainder of x^m + tail modulo d by long division on integers.
        std::uint64_t r = (std::uint64_t{1} << m) | tail;
        const int dd = 63 - std::countl_zero(d);
        for (int k = 63 - std::countl_zero(r); k >= dd; --k)
          if ((r >> k) & 1U) r ^= d << (k - dd);
        reducible = r == 0;
      }
      CHECK_MESSAGE(!reducible, "m = " << m);
    }
  }

  TEST_CASE("multiplication agrees with the schoolbook oracle") {
    Rng rng(0x5eed);
    for (unsigned m : {2U, 3U, 4U, 5U, 7U, 8U, 9U, 11U, 12U, 16U, 24U, 128U, 192U}) {
      const Field f(m);
      for (int t = 0; t < 1000; ++t) {
        const Element x = f.random(rng);
        const Element y = f.random(rng);
        REQUIRE_MESSAGE(f.mul(x, y) == oracle::mul(m, f.reduction_tail(), x, y), "m = " << m);
      }
    }
  }

  TEST_CASE("portable and dispatched carry-less multiplies agree") {
    Rng rng(3);
    for (int t = 0; t < 10000; ++t) {
      const std::uint64_t a = rng(), b = rng();
      std::uint64_t lo1, hi1, lo2, hi2;
      edonk::gf2m::detail::clmul64_portable(a, b, lo1, hi1);
      edonk::gf2m::detail::clmul64(a, b, lo2, hi2);
      REQUIRE(lo1 == lo2);
      REQUIRE(hi1 == hi2);
    }
  }

  TEST_CASE("field axioms on random triples") {
    Rng rng(11);
    for (unsigned m : {4U, 16U, 128U, 192U}) {
      const Field f(m);
      for (int t = 0; t < 10000; ++t) {
        const Element x = f.random(rng), y = f.random(rng), z = f.random(rng);
        REQUIRE(f.mul(x + y, z) == f.mul(x, z) + f.mul(y, z));
        REQUIRE(f.mul(x, f.mul(y, z)) == f.mul(f.mul(x, y), z));
        REQUIRE(f.mul(x, y) == f.mul(y, x));
        REQUIRE(f.sqr(x + y) == f.sqr(x) + f.sqr(y));
        if (!x.is_zero()) REQUIRE(f.mul(x, f.inv(x)) == f.one());
      }
    }
  }

  TEST_CASE("coords and from_coords are inverse") {
    const Field f(128);
    CHECK(f.coords(f.zero()).is_zero());
    const auto one = f.coords(f.one());
    CHECK(one.weight() == 1);
    CHECK(one.get(0));
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
      const Element x = f.random(rng);
      CHECK(f.from_coords(f.coords(x)) == x);
      edonk::BitVector v(128);
      for (std::size_t i = 0; i < 128; ++i) v.set(i, rng() & 1U);
      CHECK(f.coords(f.from_coords(v)) == v);
    }
  }

  TEST_CASE("encoding is little-endian and rejects high bits") {
    const Field f(12);
    std::vector<std::uint8_t> out(2);
    f.encode(el(0xABC), out);
    CHECK(out == std::vector<std::uint8_t>{0xBC, 0x0A});
    CHECK(f.decode(out) == el(0xABC));
    const std::vector<std::uint8_t> high{0x00, 0x10};
    CHECK_THROWS(f.decode(high));
    CHECK(f.decode_masked(high).is_zero());
  }

  TEST_CASE("random draws are reproducible and uniform") {
    const Field f(16);
    Rng r1(42), r2(42);
    CHECK(f.random(r1) == f.random(r2));

    const Field g(4);
    Rng rng(7);
    std::map<std::uint64_t, int> freq;
    const int draws = 10000;
    for (int t = 0; t < draws; ++t) freq[g.random(rng).w[0]]++;
    REQUIRE(freq.size() == 16);
    const double expected = draws / 16.0;
    const double sigma = std::sqrt(expected * (1.0 - 1.0 / 16));
    double chi2 = 0;
    for (const auto& [k, n] : freq) {
      CHECK(std::abs(n - expected) < 5 * sigma);
      chi2 += (n - expected) * (n - expected) / expected;
    }
    // 15 degrees of freedom; 37.7 is the 0.999 quantile.
    CHECK(chi2 < 37.7);

    for (int t = 0; t < 1000000; ++t) REQUIRE(!g.random_nonzero(rng).is_zero());
  }
}
