#include "skew/scalar_checks.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "skew/errors.hpp"

namespace skew {

namespace {

struct Sides {
  double large;  // side claimed to be >=
  double small;
};

double normalized_slack(Sides s) {
  return (s.large - s.small) / std::max({1.0, std::abs(s.large), std::abs(s.small)});
}

Sides lem22(double alpha, double t) {
  const double a = 1.0 - 2.0 * alpha;
  const double d = std::pow(t, alpha) - std::pow(t, 1.0 - alpha);
  return {a * a * (t - 1.0) * (t - 1.0), d * d};
}

Sides eq33(double alpha, double gamma, double x, double y) {
  const double xa = std::pow(x, alpha), ya = std::pow(y, alpha);
  const double xb = std::pow(x, 1.0 - alpha), yb = std::pow(y, 1.0 - alpha);
  const double lhs = gamma * (xa + ya) * std::abs(xb - yb) + (1.0 - gamma) * (xb + yb) * std::abs(xa - ya);
  return {std::abs(x - y), lhs};
}

Sides lem41(const MonotoneFunction& f, double x, double y) {
  const double am = 0.5 * (x + y);
  const double mt = mean_tilde(f, x, y);
  return {am * am - mt * mt, f_zero(f) * (x - y) * (x - y)};
}

Sides cond41(const MonotoneFunction& f, double x) {
  return {0.5 * (x + 1.0) + eval_f_tilde(f, x), 2.0 * eval_f(f, x)};
}

const MonotoneFunction& require_regular(const ScalarParams& p, ScalarInequality id) {
  if (!p.f) throw DomainError(std::string(to_string(id)) + " needs a monotone function");
  if (!p.f->regular()) throw NonRegularError(std::string(to_string(id)) + " needs a regular f, got " + p.f->name());
  return *p.f;
}

}  // namespace

ScalarInequality parse_scalar_inequality(std::string_view id) {
  std::string s(id);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  if (s == "LEM22") return ScalarInequality::lem22;
  if (s == "EQ33") return ScalarInequality::eq33;
  if (s == "LEM41") return ScalarInequality::lem41;
  if (s == "COND41") return ScalarInequality::cond41;
  throw UnknownIdError("unknown scalar inequality '" + std::string(id) + "'");
}

std::string_view to_string(ScalarInequality id) {
  switch (id) {
    case ScalarInequality::lem22: return "LEM22";
    case ScalarInequality::eq33: return "EQ33";
    case ScalarInequality::lem41: return "LEM41";
    case ScalarInequality::cond41: return "COND41";
  }
  return "?";
}

std::vector<double> LogGrid::values() const {
  if (!(lo > 0.0 && hi >= lo) || points == 0) throw DomainError("log grid needs 0 < lo <= hi and points >= 1");
  std::vector<double> out;
  out.reserve(points + 1);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
    out.push_back(std::exp(a + (b - a) * t));
  }
  out.front() = lo;
  out.back() = hi;
  if (include_one && lo <= 1.0 && hi >= 1.0 && std::find(out.begin(), out.end(), 1.0) == out.end()) {
    out.insert(std::upper_bound(out.begin(), out.end(), 1.0), 1.0);
  }
  return out;
}

bool eq33_region(double alpha, double gamma) {
  return (alpha <= 0.5 && gamma <= 0.5) || (alpha >= 0.5 && gamma >= 0.5);
}

ScalarCheckReport check_scalar_inequality(ScalarInequality id, const ScalarParams& params, const LogGrid& grid) {
  const auto xs = grid.values();
  ScalarCheckReport report;
  report.inequality_id = std::string(to_string(id));
  report.min_slack = std::numeric_limits<double>::infinity();

  auto visit = [&](Sides s, double x, double y) {
    const double slack = normalized_slack(s);
    if (slack < report.min_slack || std::isnan(slack)) {
      report.min_slack = slack;
      report.worst_point = {x, y};
    }
    ++report.grid_size;
  };

  switch (id) {
    case ScalarInequality::lem22:
      if (!std::isfinite(params.alpha)) throw DomainError("LEM22 needs a finite alpha");
      report.in_region = params.alpha >= 0.0 && params.alpha <= 1.0;
      for (double t : xs) visit(lem22(params.alpha, t), t, 1.0);
      break;
    case ScalarInequality::eq33:
      if (!(params.alpha >= 0.0 && params.alpha <= 1.0 && params.gamma >= 0.0 && params.gamma <= 1.0)) {
        throw DomainError("EQ33 needs alpha, gamma in [0, 1]");
      }
      report.in_region = eq33_region(params.alpha, params.gamma);
      for (double x : xs)
        for (double y : xs) visit(eq33(params.alpha, params.gamma, x, y), x, y);
      break;
    case ScalarInequality::lem41: {
      const auto& f = require_regular(params, id);
      ScalarParams cond = params;
      report.in_region = check_scalar_inequality(ScalarInequality::cond41, cond, grid).holds;
      for (double x : xs)
        for (double y : xs) visit(lem41(f, x, y), x, y);
      break;
    }
    case ScalarInequality::cond41: {
      const auto& f = require_regular(params, id);
      report.in_region = true;
      for (double x : xs) visit(cond41(f, x), x, 1.0);
      break;
    }
  }
  report.holds = report.min_slack >= -kScalarSlackTolerance;
  return report;
}

}  // namespace skew
