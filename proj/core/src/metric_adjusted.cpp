#include "skew/metric_adjusted.hpp"

#include <algorithm>
#include <cmath>

#include "skew/errors.hpp"

namespace skew {

namespace {

void require_regular(const MonotoneFunction& f, const char* what) {
  if (!f.regular()) throw NonRegularError(std::string(what) + " needs a regular f, got " + f.name());
}

Matrix i_commutator(const DensityMatrix& rho, const Observable& a) {
  return Complex{0.0, 1.0} * commutator(rho.matrix(), a.matrix());
}

double clamp_rounding(double value, double scale) {
  return (value < 0.0 && value >= -1e-12 * std::max(1.0, scale)) ? 0.0 : value;
}

}  // namespace

Complex mean_pairing(const DensityMatrix& rho, const MeanFunction& g, const Matrix& a, const Matrix& b) {
  rho.require_invertible("mean pairing");
  require_same_size(rho.matrix(), a, "mean pairing");
  require_same_size(rho.matrix(), b, "mean pairing");
  const auto& spec = rho.spectrum();
  const Matrix ae = to_eigenbasis(a, spec);
  const Matrix be = &a == &b ? ae : to_eigenbasis(b, spec);
  const auto& l = spec.eigenvalues;
  const std::size_t n = rho.size();
  Complex sum{};
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) sum += g.mean(l[j], l[k]) * ae(j, k) * be(k, j);
  return sum;
}

Complex monotone_metric(const DensityMatrix& rho, const MonotoneFunction& f, const Matrix& x, const Matrix& y) {
  rho.require_invertible("monotone metric");
  require_same_size(rho.matrix(), x, "monotone metric");
  require_same_size(rho.matrix(), y, "monotone metric");
  const auto& spec = rho.spectrum();
  const Matrix xe = to_eigenbasis(x, spec);
  const Matrix ye = &x == &y ? xe : to_eigenbasis(y, spec);
  const auto& l = spec.eigenvalues;
  const std::size_t n = rho.size();
  Complex sum{};
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) sum += std::conj(xe(j, k)) * ye(j, k) / scalar_mean(f, l[j], l[k]);
  return sum;
}

Complex corr_f(const DensityMatrix& rho, const MonotoneFunction& f, const Observable& a, const Observable& b,
               NonRegularPolicy policy) {
  rho.require_invertible("metric adjusted correlation");
  require_same_size(rho.matrix(), a.matrix(), "metric adjusted correlation");
  require_same_size(rho.matrix(), b.matrix(), "metric adjusted correlation");
  if (!f.regular()) {
    if (policy == NonRegularPolicy::reject) require_regular(f, "metric adjusted correlation");
    return 0.0;
  }
  const Matrix ia = i_commutator(rho, a);
  if (&a == &b) return 0.5 * f_zero(f) * monotone_metric(rho, f, ia, ia);
  return 0.5 * f_zero(f) * monotone_metric(rho, f, ia, i_commutator(rho, b));
}

Complex corr_f_via_mean(const DensityMatrix& rho, const MonotoneFunction& f, const Observable& a,
                        const Observable& b) {
  require_regular(f, "metric adjusted correlation");
  const Observable a0 = center(rho, a);
  const Observable b0 = center(rho, b);
  const Complex sym = 0.5 * trace_of_product(rho.matrix() * a0.matrix(), b0.matrix()) +
                      0.5 * trace_of_product(rho.matrix() * b0.matrix(), a0.matrix());
  return sym - mean_pairing(rho, MeanFunction::tilde_of(f), a0.matrix(), b0.matrix());
}

Complex corr_f_spectral(const DensityMatrix& rho, const MonotoneFunction& f, const Observable& a,
                        const Observable& b) {
  require_regular(f, "metric adjusted correlation");
  rho.require_invertible("metric adjusted correlation");
  const auto& spec = rho.spectrum();
  const Matrix ae = to_eigenbasis(center(rho, a).matrix(), spec);
  const Matrix be = to_eigenbasis(center(rho, b).matrix(), spec);
  const auto& l = spec.eigenvalues;
  const std::size_t n = rho.size();
  Complex sum{};
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      sum += (0.5 * (l[j] + l[k]) - mean_tilde(f, l[j], l[k])) * ae(j, k) * be(k, j);
  return sum;
}

MetricQuantities metric_quantities(const DensityMatrix& rho, const MonotoneFunction& f, const Observable& a) {
  require_regular(f, "metric adjusted quantities");
  rho.require_invertible("metric adjusted quantities");
  const Observable a0 = center(rho, a);
  MetricQuantities q;
  const double v = trace_of_product(rho.matrix() * a0.matrix(), a0.matrix()).real();
  q.variance = clamp_rounding(v, v);
  q.c_tilde = mean_pairing(rho, MeanFunction::tilde_of(f), a0.matrix(), a0.matrix()).real();
  q.i_f = clamp_rounding(corr_f(rho, f, a, a).real(), q.variance);
  q.j_f = q.variance + q.c_tilde;
  q.u_f = std::sqrt(clamp_rounding(q.i_f * (2.0 * q.variance - q.i_f), q.variance * q.variance));
  return q;
}

}  // namespace skew
