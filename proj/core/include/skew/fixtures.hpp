#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "skew/inequalities.hpp"

namespace skew {

/// A stored problem instance with a known reference value.
struct Fixture {
  std::string name;
  std::string description;
  Matrix rho;
  Matrix a;
  Matrix b;
  InequalityId id;
  CheckParams params;
  double reference;
  double reference_tolerance;
};

/// REMARK_2_1, REMARK_2_2, EQUALITY_WY.
std::vector<std::string_view> fixture_names();
/// Case-insensitive; throws UnknownIdError.
const Fixture& fixture(std::string_view name);

struct Reproduction {
  std::string fixture;
  CheckResult result;
  double reference = 0.0;
  double tolerance = 0.0;
  bool matches = false;  ///< |margin - reference| <= tolerance
};

/// Runs a stored fixture through check_inequality and compares with its reference.
Reproduction reproduce_example(std::string_view name);

}  // namespace skew
