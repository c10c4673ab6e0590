#pragma once

#include "skew/hermitian.hpp"
#include "skew/monotone.hpp"

namespace skew {

/// Metric adjusted quantities of one observable A under a regular f.
struct MetricQuantities {
  double i_f = 0.0;      ///< metric adjusted skew information I^f(A)
  double j_f = 0.0;      ///< J^f(A) = V(A) + C^{f~}(A0)
  double u_f = 0.0;      ///< U^f(A) = sqrt(V^2 - (V - I^f)^2)
  double c_tilde = 0.0;  ///< C^{f~}(A0, A0)
  double variance = 0.0;
};

/// What corr_f does for a non-regular f.
enum class NonRegularPolicy {
  reject,  ///< throw NonRegularError
  zero,    ///< return 0: f(0) = 0 makes the metric path vanish identically
};

/// C^g(A, B) = Tr[m_g(L_rho, R_rho)(A) B] = sum_{j,k} m_g(l_j, l_k) a_jk b_kj in the
/// eigenbasis of rho. Requires rho invertible.
Complex mean_pairing(const DensityMatrix& rho, const MeanFunction& g, const Matrix& a, const Matrix& b);

/// <X, Y>_{rho,f} = Tr[X^dagger m_f(L_rho, R_rho)^{-1}(Y)] = sum_{j,k} conj(x_jk) y_jk / m_f(l_j, l_k).
Complex monotone_metric(const DensityMatrix& rho, const MonotoneFunction& f, const Matrix& x, const Matrix& y);

/// Metric adjusted correlation measure (f(0)/2) <i[rho, A], i[rho, B]>_{rho,f}.
Complex corr_f(const DensityMatrix& rho, const MonotoneFunction& f, const Observable& a, const Observable& b,
               NonRegularPolicy policy = NonRegularPolicy::reject);

/// The same measure via Tr[rho A0 B0]/2 + Tr[rho B0 A0]/2 - C^{f~}(A0, B0).
Complex corr_f_via_mean(const DensityMatrix& rho, const MonotoneFunction& f, const Observable& a,
                        const Observable& b);

/// The same measure as a double sum over eigenpairs:
/// sum_{j,k} ((l_j + l_k)/2 - m_{f~}(l_j, l_k)) a_jk b_kj.
Complex corr_f_spectral(const DensityMatrix& rho, const MonotoneFunction& f, const Observable& a,
                        const Observable& b);

/// I^f, J^f, U^f and C^{f~}(A0) for a regular f. I^f comes from the metric; J^f
/// from the mean pairing.
MetricQuantities metric_quantities(const DensityMatrix& rho, const MonotoneFunction& f, const Observable& a);

}  // namespace skew
