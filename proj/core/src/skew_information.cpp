#include "skew/skew_information.hpp"

#include <algorithm>
#include <cmath>

#include "skew/errors.hpp"

namespace skew {

namespace {

void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError(std::string(what) + " must lie in [0, 1]");
}

// Rounding can push a non-negative quantity a hair below zero; pull it back.
double clamp_rounding(double value, double scale, bool* clamped = nullptr) {
  if (value < 0.0 && value >= -1e-12 * std::max(1.0, scale)) {
    if (clamped) *clamped = true;
    return 0.0;
  }
  return value;
}

double power_or_zero(double lambda, double s) { return lambda == 0.0 ? 0.0 : std::pow(lambda, s); }

// Tr[rho^a H0 rho^(1-a) H0]
double sandwiched(const Matrix& h0, const PowerPair& p) {
  return trace_of_product(p.rho_alpha * h0, p.rho_complement * h0).real();
}

struct Centered {
  Observable h0;
  double variance;
};

// For invertible rho the endpoints give rho^0 = I and I_{rho,0} = I_{rho,1} = 0 exactly;
// computing them would leave rounding noise that sqrt(I J) blows up to ~1e-8.
bool exact_endpoint(const DensityMatrix& rho, const PowerPair& p) {
  return (p.alpha == 0.0 || p.alpha == 1.0) && rho.invertible();
}

Centered centered(const DensityMatrix& rho, const Observable& h) {
  Observable h0 = center(rho, h);
  const double v = trace_of_product(rho.matrix() * h0.matrix(), h0.matrix()).real();
  return {std::move(h0), v};
}

}  // namespace

PowerPair PowerPair::of(const DensityMatrix& rho, double alpha) {
  require_unit_interval(alpha, "alpha");
  if ((alpha == 0.0 || alpha == 1.0) && rho.invertible()) {
    const Matrix id = Matrix::identity(rho.size());
    return alpha == 0.0 ? PowerPair{alpha, id, rho.matrix()} : PowerPair{alpha, rho.matrix(), id};
  }
  return {alpha, fractional_power(rho, alpha), fractional_power(rho, 1.0 - alpha)};
}

double variance(const DensityMatrix& rho, const Observable& a) {
  require_same_size(rho.matrix(), a.matrix(), "variance");
  const auto c = centered(rho, a);
  return clamp_rounding(c.variance, c.variance);
}

Complex covariance(const DensityMatrix& rho, const Observable& a, const Observable& b) {
  require_same_size(rho.matrix(), a.matrix(), "covariance");
  require_same_size(rho.matrix(), b.matrix(), "covariance");
  const Observable a0 = center(rho, a);
  const Observable b0 = center(rho, b);
  return trace_of_product(rho.matrix() * a0.matrix(), b0.matrix());
}

Complex commutator_expectation(const DensityMatrix& rho, const Observable& a, const Observable& b) {
  require_same_size(rho.matrix(), a.matrix(), "commutator expectation");
  require_same_size(rho.matrix(), b.matrix(), "commutator expectation");
  return trace_of_product(rho.matrix(), commutator(a.matrix(), b.matrix()));
}

double wyd_skew_information(const DensityMatrix& rho, const Observable& h, double alpha) {
  require_unit_interval(alpha, "alpha");
  return wyd_skew_information(rho, h, PowerPair::of(rho, alpha));
}

double wyd_skew_information(const DensityMatrix& rho, const Observable& h, const PowerPair& powers) {
  require_same_size(rho.matrix(), h.matrix(), "skew information");
  const auto c = centered(rho, h);
  if (exact_endpoint(rho, powers)) return 0.0;
  return clamp_rounding(c.variance - sandwiched(c.h0.matrix(), powers), c.variance);
}

double wyd_j(const DensityMatrix& rho, const Observable& h, double alpha) {
  require_unit_interval(alpha, "alpha");
  return wyd_j(rho, h, PowerPair::of(rho, alpha));
}

double wyd_j(const DensityMatrix& rho, const Observable& h, const PowerPair& powers) {
  require_same_size(rho.matrix(), h.matrix(), "skew information");
  const auto c = centered(rho, h);
  if (exact_endpoint(rho, powers)) return 2.0 * clamp_rounding(c.variance, c.variance);
  return clamp_rounding(c.variance + sandwiched(c.h0.matrix(), powers), c.variance);
}

double u_alpha(const DensityMatrix& rho, const Observable& h, double alpha) {
  require_unit_interval(alpha, "alpha");
  return u_alpha(rho, h, PowerPair::of(rho, alpha));
}

double u_alpha(const DensityMatrix& rho, const Observable& h, const PowerPair& powers) {
  require_same_size(rho.matrix(), h.matrix(), "skew information");
  const auto c = centered(rho, h);
  const double v = clamp_rounding(c.variance, c.variance);
  if (exact_endpoint(rho, powers)) return 0.0;
  const double i = clamp_rounding(v - sandwiched(c.h0.matrix(), powers), v);
  // V^2 - (V - I)^2 == I (2V - I), without the cancellation when I << V.
  return std::sqrt(clamp_rounding(i * (2.0 * v - i), v * v));
}

Complex corr_alpha(const DensityMatrix& rho, const Observable& x, const Observable& y, double alpha) {
  require_unit_interval(alpha, "alpha");
  return corr_alpha(rho, x, y, PowerPair::of(rho, alpha));
}

Complex corr_alpha(const DensityMatrix& rho, const Observable& x, const Observable& y, const PowerPair& powers) {
  require_same_size(rho.matrix(), x.matrix(), "correlation measure");
  require_same_size(rho.matrix(), y.matrix(), "correlation measure");
  const Matrix xs = x.matrix().adjoint();
  return trace_of_product(rho.matrix() * xs, y.matrix()) -
         trace_of_product(powers.rho_alpha * xs, powers.rho_complement * y.matrix());
}

Complex corr_alpha_gamma(const DensityMatrix& rho, const Observable& x, const Observable& y, AlphaGamma params) {
  require_unit_interval(params.alpha, "alpha");
  require_unit_interval(params.gamma, "gamma");
  const auto p = PowerPair::of(rho, params.alpha);
  // Corr_{1-alpha} uses the same pair with the roles swapped.
  const PowerPair q{1.0 - params.alpha, p.rho_complement, p.rho_alpha};
  return params.gamma * corr_alpha(rho, x, y, p) + (1.0 - params.gamma) * corr_alpha(rho, x, y, q);
}

Complex corr_sym(const DensityMatrix& rho, const Observable& x, const Observable& y, AlphaGamma params) {
  require_unit_interval(params.alpha, "alpha");
  require_unit_interval(params.gamma, "gamma");
  const auto p = PowerPair::of(rho, params.alpha);
  return params.gamma * corr_alpha(rho, x, y, p) + (1.0 - params.gamma) * corr_alpha(rho, y, x, p);
}

SkewQuantities skew_quantities(const DensityMatrix& rho, const Observable& h, double alpha) {
  require_unit_interval(alpha, "alpha");
  require_same_size(rho.matrix(), h.matrix(), "skew information");
  const auto p = PowerPair::of(rho, alpha);
  const auto c = centered(rho, h);
  const bool endpoint = exact_endpoint(rho, p);
  const double t = endpoint ? c.variance : sandwiched(c.h0.matrix(), p);

  SkewQuantities q;
  bool flag = false;
  q.variance = clamp_rounding(c.variance, c.variance, &flag);
  if (flag) q.clamped.emplace_back("variance");
  flag = false;
  q.skew = endpoint ? 0.0 : clamp_rounding(q.variance - t, q.variance, &flag);
  if (flag) q.clamped.emplace_back("I");
  q.j = clamp_rounding(q.variance + t, q.variance);
  flag = false;
  q.u = std::sqrt(clamp_rounding(q.skew * (2.0 * q.variance - q.skew), q.variance * q.variance, &flag));
  if (flag) q.clamped.emplace_back("U");
  return q;
}

namespace spectral {

namespace {

struct EigenbasisView {
  std::vector<double> lambda;  // clamped
  std::vector<double> raw;
  Matrix a;
};

EigenbasisView view(const DensityMatrix& rho, const Observable& h) {
  require_same_size(rho.matrix(), h.matrix(), "spectral sum");
  return {rho.clamped_eigenvalues(), rho.spectrum().eigenvalues,
          to_eigenbasis(center(rho, h).matrix(), rho.spectrum())};
}

}  // namespace

double wyd_skew_information(const DensityMatrix& rho, const Observable& h, double alpha) {
  require_unit_interval(alpha, "alpha");
  const auto e = view(rho, h);
  const std::size_t n = rho.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d1 = power_or_zero(e.lambda[i], alpha) - power_or_zero(e.lambda[j], alpha);
      const double d2 = power_or_zero(e.lambda[i], 1.0 - alpha) - power_or_zero(e.lambda[j], 1.0 - alpha);
      sum += d1 * d2 * std::norm(e.a(i, j));
    }
  return sum;
}

double wyd_j_lower_bound(const DensityMatrix& rho, const Observable& h, double alpha) {
  require_unit_interval(alpha, "alpha");
  const auto e = view(rho, h);
  const std::size_t n = rho.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s1 = power_or_zero(e.lambda[i], alpha) + power_or_zero(e.lambda[j], alpha);
      const double s2 = power_or_zero(e.lambda[i], 1.0 - alpha) + power_or_zero(e.lambda[j], 1.0 - alpha);
      sum += s1 * s2 * std::norm(e.a(i, j));
    }
  return sum;
}

Complex corr_alpha(const DensityMatrix& rho, const Observable& x, const Observable& y, double alpha) {
  require_unit_interval(alpha, "alpha");
  const auto ex = view(rho, x);
  const Matrix b = to_eigenbasis(center(rho, y).matrix(), rho.spectrum());
  const std::size_t n = rho.size();
  Complex sum{};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double w = ex.raw[i] - power_or_zero(ex.lambda[i], alpha) * power_or_zero(ex.lambda[j], 1.0 - alpha);
      // (X0*)_ij in the eigenbasis is conj(a_ji).
      sum += w * std::conj(ex.a(j, i)) * b(j, i);
    }
  return sum;
}

}  // namespace spectral

}  // namespace skew
