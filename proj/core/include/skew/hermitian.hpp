#pragma once

#include <vector>

#include "skew/matrix.hpp"

namespace skew {

/// Relative Hermiticity bound: max|M - M^dagger| <= kHermitianTolerance * max(1, max|M|).
inline constexpr double kHermitianTolerance = 1e-12;
/// |Tr rho - 1| bound for density matrices.
inline constexpr double kTraceTolerance = 1e-12;
/// Eigenvalues of a state may dip this far below zero from rounding.
inline constexpr double kNegativeEigenvalueTolerance = 1e-12;
/// Default positivity floor: eigenvalues below it count as zero, and metric-adjusted
/// operations reject the state.
inline constexpr double kDefaultPositivityFloor = 1e-10;

/// Eigen-pairs of a Hermitian matrix.
///
/// Eigenvalues ascend. Column j of `eigenvectors` belongs to `eigenvalues[j]`; the
/// first entry of largest magnitude in each column is real and non-negative.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;

  std::size_t size() const noexcept { return eigenvalues.size(); }
  /// V diag(lambda) V^dagger
  Matrix reconstruct() const;
};

/// Cyclic complex Jacobi. Sweeps run in fixed (p, q) order until the off-diagonal
/// Frobenius norm drops to 1e-13 ||M||_F; gives up after 100 sweeps.
/// Throws ValidationError if `m` is not Hermitian, ConvergenceError on the sweep limit.
SpectralDecomposition hermitian_eigendecompose(const Matrix& m);

/// A Hermitian matrix.
class Observable {
 public:
  /// Throws ValidationError (invariant "hermitian" or "finite") on bad input.
  explicit Observable(Matrix m);

  const Matrix& matrix() const noexcept { return m_; }
  std::size_t size() const noexcept { return m_.size(); }

 private:
  Matrix m_;
};

/// A quantum state: Hermitian, unit trace, positive semidefinite.
///
/// The spectral decomposition is computed once at construction and shared by
/// every formula that needs rho^s or the eigenbasis.
class DensityMatrix {
 public:
  /// Throws ValidationError naming "hermitian", "trace", "positivity" or "finite".
  explicit DensityMatrix(Matrix m, double positivity_floor = kDefaultPositivityFloor);

  const Matrix& matrix() const noexcept { return m_; }
  std::size_t size() const noexcept { return m_.size(); }
  const SpectralDecomposition& spectrum() const noexcept { return spectrum_; }
  double positivity_floor() const noexcept { return floor_; }
  double min_eigenvalue() const noexcept { return spectrum_.eigenvalues.front(); }

  /// Eigenvalues with everything below the positivity floor set to exactly zero.
  std::vector<double> clamped_eigenvalues() const;

  bool invertible() const noexcept { return min_eigenvalue() >= floor_; }
  /// Throws SingularStateError when !invertible().
  void require_invertible(const char* operation) const;

 private:
  Matrix m_;
  double floor_;
  SpectralDecomposition spectrum_;
};

/// A - Tr[rho A] I
Observable center(const DensityMatrix& rho, const Observable& a);

/// rho^s = V diag(lambda^s) V^dagger for s in [0, 1]. Eigenvalues under the positivity
/// floor are treated as 0, so rho^0 is the projector onto the support.
Matrix fractional_power(const DensityMatrix& rho, double s);

/// AB - BA
Matrix commutator(const Matrix& a, const Matrix& b);
/// AB + BA
Matrix anticommutator(const Matrix& a, const Matrix& b);

/// V^dagger M V
Matrix to_eigenbasis(const Matrix& m, const SpectralDecomposition& basis);

}  // namespace skew
