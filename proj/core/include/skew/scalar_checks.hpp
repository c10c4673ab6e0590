#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skew/monotone.hpp"

namespace skew {

/// Scalar inequalities that the matrix-level uncertainty relations rest on.
///   lem22:  (1 - 2a)^2 (t - 1)^2 >= (t^a - t^(1-a))^2,                 t > 0, a in [0, 1]
///   eq33:   g (x^a + y^a)|x^(1-a) - y^(1-a)| + (1 - g)(x^(1-a) + y^(1-a))|x^a - y^a| <= |x - y|,
///           on a, g <= 1/2 or a, g >= 1/2
///   lem41:  ((x + y)/2)^2 - m_f~(x, y)^2 >= f(0)(x - y)^2,            given cond41
///   cond41: (x + 1)/2 + f~(x) >= 2 f(x)
enum class ScalarInequality { lem22, eq33, lem41, cond41 };

/// Case-insensitive; throws UnknownIdError.
ScalarInequality parse_scalar_inequality(std::string_view id);
std::string_view to_string(ScalarInequality id);

/// Logarithmically spaced sample points on [lo, hi], optionally with x = 1 inserted.
struct LogGrid {
  double lo = 1e-3;
  double hi = 1e3;
  std::size_t points = 2001;
  bool include_one = true;

  std::vector<double> values() const;
};

struct ScalarParams {
  double alpha = 0.5;
  double gamma = 0.5;
  std::optional<MonotoneFunction> f;
};

struct ScalarPoint {
  double x = 1.0;
  double y = 1.0;  // 1 for one-variable inequalities
};

/// Slack is (larger side - smaller side) / max(1, |lhs|, |rhs|), so one threshold
/// serves every scale on the grid.
struct ScalarCheckReport {
  std::string inequality_id;
  std::size_t grid_size = 0;
  double min_slack = 0.0;
  ScalarPoint worst_point;
  bool holds = false;
  /// Parameters satisfy the inequality's stated hypothesis.
  bool in_region = false;
};

inline constexpr double kScalarSlackTolerance = 1e-12;

/// Evaluates the inequality on the grid (the product grid for two-variable ones).
/// Runs outside the stated region as well; `in_region` records which case applies.
ScalarCheckReport check_scalar_inequality(ScalarInequality id, const ScalarParams& params,
                                          const LogGrid& grid = {});

/// The (alpha, gamma) region on which eq33 is claimed.
bool eq33_region(double alpha, double gamma);

}  // namespace skew
