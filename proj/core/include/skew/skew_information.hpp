#pragma once

#include <string>
#include <vector>

#include "skew/hermitian.hpp"

namespace skew {

/// Two parameters in [0, 1] for the extended correlation measures.
struct AlphaGamma {
  double alpha = 0.5;
  double gamma = 0.5;
};

/// rho^alpha and rho^(1-alpha), computed together since every WYD formula needs both.
struct PowerPair {
  double alpha;
  Matrix rho_alpha;
  Matrix rho_complement;

  /// Throws DomainError unless alpha is in [0, 1].
  static PowerPair of(const DensityMatrix& rho, double alpha);
};

/// V_rho(A) = Tr[rho A0^2]
double variance(const DensityMatrix& rho, const Observable& a);

/// Cov_rho(A, B) = Tr[rho A0 B0]
Complex covariance(const DensityMatrix& rho, const Observable& a, const Observable& b);

/// Tr[rho [A, B]], purely imaginary for observables.
Complex commutator_expectation(const DensityMatrix& rho, const Observable& a, const Observable& b);

/// Wigner-Yanase-Dyson skew information I_{rho,alpha}(H) = Tr[rho H0^2] - Tr[rho^a H0 rho^(1-a) H0].
/// alpha = 1/2 is the Wigner-Yanase skew information.
double wyd_skew_information(const DensityMatrix& rho, const Observable& h, double alpha);
double wyd_skew_information(const DensityMatrix& rho, const Observable& h, const PowerPair& powers);

/// J_{rho,alpha}(H) = Tr[rho H0^2] + Tr[rho^a H0 rho^(1-a) H0]
double wyd_j(const DensityMatrix& rho, const Observable& h, double alpha);
double wyd_j(const DensityMatrix& rho, const Observable& h, const PowerPair& powers);

/// U_{rho,alpha}(H) = sqrt(V^2 - (V - I)^2), evaluated as sqrt(I (2V - I)).
double u_alpha(const DensityMatrix& rho, const Observable& h, double alpha);
double u_alpha(const DensityMatrix& rho, const Observable& h, const PowerPair& powers);

/// Corr_{rho,alpha}(X, Y) = Tr[rho X* Y] - Tr[rho^a X* rho^(1-a) Y]
Complex corr_alpha(const DensityMatrix& rho, const Observable& x, const Observable& y, double alpha);
Complex corr_alpha(const DensityMatrix& rho, const Observable& x, const Observable& y, const PowerPair& powers);

/// gamma Corr_alpha(X, Y) + (1 - gamma) Corr_{1-alpha}(X, Y)
Complex corr_alpha_gamma(const DensityMatrix& rho, const Observable& x, const Observable& y, AlphaGamma params);

/// gamma Corr_alpha(X, Y) + (1 - gamma) Corr_alpha(Y, X)
Complex corr_sym(const DensityMatrix& rho, const Observable& x, const Observable& y, AlphaGamma params);

/// V, I, J, U for one observable, plus which of them were clamped from a
/// rounding-negative value to zero.
struct SkewQuantities {
  double variance = 0.0;
  double skew = 0.0;
  double j = 0.0;
  double u = 0.0;
  std::vector<std::string> clamped;
};

SkewQuantities skew_quantities(const DensityMatrix& rho, const Observable& h, double alpha);

/// Spectral-sum forms over the eigenbasis of rho. They share no code path with the
/// trace formulas above beyond the eigendecomposition and serve as the cross-check.
namespace spectral {

/// sum_{i<j} (l_i^a - l_j^a)(l_i^(1-a) - l_j^(1-a)) |h_ij|^2
double wyd_skew_information(const DensityMatrix& rho, const Observable& h, double alpha);

/// Lower bound sum_{i<j} (l_i^a + l_j^a)(l_i^(1-a) + l_j^(1-a)) |h_ij|^2 of J.
double wyd_j_lower_bound(const DensityMatrix& rho, const Observable& h, double alpha);

/// sum_{i,j} (l_i - l_i^a l_j^(1-a)) a_ij b_ji
Complex corr_alpha(const DensityMatrix& rho, const Observable& x, const Observable& y, double alpha);

}  // namespace spectral

}  // namespace skew
