#include "skew/monotone.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "skew/errors.hpp"

namespace skew {

namespace {

constexpr double kTaylorRadius = 1e-6;

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(what) + ": argument must be finite and > 0");
}

// Second-order coefficient c in f(1 + u) = 1 + u/2 + c u^2 + O(u^3).
double taylor_c2(const MonotoneFunction& f) {
  switch (f.kind()) {
    case FunctionKind::sld: return 0.0;
    case FunctionKind::rld: return -0.25;
    case FunctionKind::bkm: return -1.0 / 12.0;
    case FunctionKind::wy: return -1.0 / 16.0;
    case FunctionKind::wyd: {
      const double ab = f.alpha() * (1.0 - f.alpha());
      return (ab - 1.0) / 12.0;
    }
  }
  return 0.0;
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
  return out;
}

}  // namespace

MonotoneFunction MonotoneFunction::wyd(double alpha) {
  if (!(alpha >= kMinWydAlpha && alpha <= 1.0 - kMinWydAlpha)) {
    throw DomainError("WYD exponent must lie in [1e-6, 1 - 1e-6]");
  }
  return MonotoneFunction(FunctionKind::wyd, alpha);
}

MonotoneFunction MonotoneFunction::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string head = upper(text.substr(0, colon));
  if (head == "WYD") {
    if (colon == std::string_view::npos) throw UnknownIdError("WYD needs an exponent, e.g. WYD:0.3");
    const auto tail = text.substr(colon + 1);
    double alpha = 0.0;
    const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), alpha);
    if (ec != std::errc{} || ptr != tail.data() + tail.size()) {
      throw DomainError("cannot parse WYD exponent '" + std::string(tail) + "'");
    }
    return wyd(alpha);
  }
  if (colon != std::string_view::npos) throw UnknownIdError("only WYD takes a parameter: '" + std::string(text) + "'");
  if (head == "SLD") return sld();
  if (head == "RLD") return rld();
  if (head == "BKM") return bkm();
  if (head == "WY") return wy();
  throw UnknownIdError("unknown monotone function '" + std::string(text) + "'");
}

bool MonotoneFunction::regular() const noexcept {
  return kind_ == FunctionKind::sld || kind_ == FunctionKind::wy || kind_ == FunctionKind::wyd;
}

std::string MonotoneFunction::name() const {
  switch (kind_) {
    case FunctionKind::sld: return "SLD";
    case FunctionKind::rld: return "RLD";
    case FunctionKind::bkm: return "BKM";
    case FunctionKind::wy: return "WY";
    case FunctionKind::wyd: {
      // Shortest text that parses back to the same alpha.
      char buf[32];
      const auto res = std::to_chars(buf, buf + sizeof buf, alpha_);
      return "WYD:" + std::string(buf, res.ptr);
    }
  }
  return {};
}

double eval_f(const MonotoneFunction& f, double x) {
  require_positive(x, "eval_f");
  if (x == 1.0) return 1.0;
  const double u = x - 1.0;
  switch (f.kind()) {
    case FunctionKind::sld: return (x + 1.0) / 2.0;
    case FunctionKind::rld: return 2.0 * x / (x + 1.0);
    case FunctionKind::wy: {
      const double h = (std::sqrt(x) + 1.0) / 2.0;
      return h * h;
    }
    case FunctionKind::bkm:
    case FunctionKind::wyd:
      if (std::abs(u) < kTaylorRadius) return 1.0 + u / 2.0 + taylor_c2(f) * u * u;
      break;
  }
  // u is exact on [1/2, 2] (Sterbenz); further out x - 1 rounds and log1p would
  // inherit an error of eps / x, so take the log of x itself.
  const double log_x = (x >= 0.5 && x <= 2.0) ? std::log1p(u) : std::log(x);
  if (f.kind() == FunctionKind::bkm) return u / log_x;
  const double a = f.alpha();
  return a * (1.0 - a) * u * u / (std::expm1(a * log_x) * std::expm1((1.0 - a) * log_x));
}

double f_zero(const MonotoneFunction& f) {
  switch (f.kind()) {
    case FunctionKind::sld: return 0.5;
    case FunctionKind::rld:
    case FunctionKind::bkm: return 0.0;
    case FunctionKind::wy: return 0.25;
    case FunctionKind::wyd: return f.alpha() * (1.0 - f.alpha());
  }
  return 0.0;
}

double eval_f_tilde(const MonotoneFunction& f, double x) {
  if (!f.regular()) throw NonRegularError("f~ is only defined for regular f, got " + f.name());
  require_positive(x, "eval_f_tilde");
  if (x == 1.0) return 1.0;
  const double u = x - 1.0;
  return 0.5 * ((x + 1.0) - u * u * f_zero(f) / eval_f(f, x));
}

double scalar_mean(const MonotoneFunction& f, double x, double y) {
  require_positive(x, "scalar_mean");
  require_positive(y, "scalar_mean");
  if (x == y) return x;
  return y * eval_f(f, x / y);
}

double mean_tilde(const MonotoneFunction& f, double x, double y) {
  if (!f.regular()) throw NonRegularError("m_f~ is only defined for regular f, got " + f.name());
  const double mf = scalar_mean(f, x, y);
  const double d = x - y;
  return 0.5 * (x + y) - f_zero(f) * d * d / (2.0 * mf);
}

MeanFunction MeanFunction::tilde_of(const MonotoneFunction& f) {
  if (!f.regular()) throw NonRegularError("f~ is only defined for regular f, got " + f.name());
  return MeanFunction(f, true);
}

double MeanFunction::operator()(double x) const { return tilde_ ? eval_f_tilde(f_, x) : eval_f(f_, x); }

double MeanFunction::mean(double x, double y) const {
  return tilde_ ? mean_tilde(f_, x, y) : scalar_mean(f_, x, y);
}

double scalar_mean(const MeanFunction& g, double x, double y) { return g.mean(x, y); }

}  // namespace skew
