#pragma once

#include <string>
#include <string_view>

namespace skew {

/// The catalog of symmetric normalized operator monotone functions.
enum class FunctionKind { sld, rld, bkm, wy, wyd };

/// One member of the catalog. WYD carries its exponent alpha in [1e-6, 1 - 1e-6].
class MonotoneFunction {
 public:
  static constexpr double kMinWydAlpha = 1e-6;

  static MonotoneFunction sld() { return MonotoneFunction(FunctionKind::sld, 0.0); }
  static MonotoneFunction rld() { return MonotoneFunction(FunctionKind::rld, 0.0); }
  static MonotoneFunction bkm() { return MonotoneFunction(FunctionKind::bkm, 0.0); }
  static MonotoneFunction wy() { return MonotoneFunction(FunctionKind::wy, 0.0); }
  /// Throws DomainError when alpha is outside [1e-6, 1 - 1e-6].
  static MonotoneFunction wyd(double alpha);

  /// Parses "SLD", "RLD", "BKM", "WY" or "WYD:<alpha>" (case-insensitive).
  static MonotoneFunction parse(std::string_view text);

  FunctionKind kind() const noexcept { return kind_; }
  /// Exponent for WYD, 0 otherwise.
  double alpha() const noexcept { return alpha_; }
  /// f(0) != 0
  bool regular() const noexcept;
  /// "WY", "WYD:0.3", ...
  std::string name() const;

  friend bool operator==(const MonotoneFunction&, const MonotoneFunction&) = default;

 private:
  MonotoneFunction(FunctionKind kind, double alpha) : kind_(kind), alpha_(alpha) {}

  FunctionKind kind_;
  double alpha_;
};

/// f(x) for x > 0. BKM and WYD switch to a second-order Taylor expansion about 1
/// when |x - 1| < 1e-6; f(1) == 1 exactly for every kind.
double eval_f(const MonotoneFunction& f, double x);

/// lim_{x -> 0} f(x)
double f_zero(const MonotoneFunction& f);

/// f~(x) = ((x + 1) - (x - 1)^2 f(0) / f(x)) / 2 for regular f.
double eval_f_tilde(const MonotoneFunction& f, double x);

/// m_f(x, y) = y f(x / y)
double scalar_mean(const MonotoneFunction& f, double x, double y);

/// m_{f~}(x, y) = (x + y)/2 - f(0)(x - y)^2 / (2 m_f(x, y)), for regular f.
double mean_tilde(const MonotoneFunction& f, double x, double y);

/// A mean-generating function: either a catalog f or the f~ of a regular one.
class MeanFunction {
 public:
  static MeanFunction of(const MonotoneFunction& f) { return MeanFunction(f, false); }
  /// Throws NonRegularError when f is not regular.
  static MeanFunction tilde_of(const MonotoneFunction& f);

  const MonotoneFunction& base() const noexcept { return f_; }
  bool is_tilde() const noexcept { return tilde_; }

  double operator()(double x) const;
  /// y g(x / y); the f~ branch uses the closed form of mean_tilde.
  double mean(double x, double y) const;

 private:
  MeanFunction(const MonotoneFunction& f, bool tilde) : f_(f), tilde_(tilde) {}

  MonotoneFunction f_;
  bool tilde_;
};

/// m_g(x, y) for any mean-generating g.
double scalar_mean(const MeanFunction& g, double x, double y);

}  // namespace skew
