#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "edonk/gf2m.hpp"

namespace edonk::selftest {

/// Multiplication under test. Defaults to Field::mul; a fault can be injected for mutation checks.
using MulFn = std::function<gf2m::Element(const gf2m::Field&, const gf2m::Element&, const gf2m::Element&)>;

struct Options {
  std::uint64_t seed = 1;
  MulFn mul;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Field oracles, key identities, the syndrome-support inclusion, small brute-force equivalences
/// and toy round trips.
std::vector<CheckResult> run(const Options& opts);

/// Field::mul with bit 0 of the product flipped whenever both operands have bit 1 set.
MulFn faulty_mul();

}  // namespace edonk::selftest
