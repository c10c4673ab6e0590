#include "skew/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "skew/errors.hpp"

namespace skew {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTolerance = 1e-13;

double off_diagonal_norm(const Matrix& m) {
  double s = 0.0;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

// One Jacobi rotation annihilating a(p, q). The unitary is a phase on column q
// (making a(p, q) real) followed by a real Givens rotation.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;

  const Complex phase = std::conj(apq) / mag;  // e^{-i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex upp = c;
  const Complex upq = s;
  const Complex uqp = -s * phase;
  const Complex uqq = c * phase;

  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * upp + akq * uqp;
    a(k, q) = akp * upq + akq * uqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * upp + vkq * uqp;
    v(k, q) = vkp * upq + vkq * uqq;
  }
}

// Rotate column j so its first entry of (numerically) largest magnitude is real, >= 0.
void fix_phase(Matrix& v, std::size_t j) {
  const std::size_t n = v.size();
  double largest = 0.0;
  for (std::size_t i = 0; i < n; ++i) largest = std::max(largest, std::abs(v(i, j)));
  if (largest == 0.0) return;
  std::size_t pivot = 0;
  while (std::abs(v(pivot, j)) < largest * (1.0 - 1e-10)) ++pivot;
  const Complex z = v(pivot, j);
  const Complex rot = std::conj(z) / std::abs(z);
  for (std::size_t i = 0; i < n; ++i) v(i, j) *= rot;
  v(pivot, j) = std::abs(z);
}

std::string format_value(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

void validate_hermitian(const Matrix& m, const char* name) {
  if (!m.is_finite()) {
    throw ValidationError("finite", std::string(name) + ": entries must be finite");
  }
  const double defect = hermiticity_defect(m);
  const double bound = kHermitianTolerance * std::max(1.0, m.max_abs());
  if (defect > bound) {
    throw ValidationError("hermitian", std::string(name) + ": not Hermitian, max|M - M^dagger| = " +
                                           format_value(defect) + " exceeds " + format_value(bound));
  }
}

}  // namespace

Matrix SpectralDecomposition::reconstruct() const {
  const std::size_t n = size();
  Matrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < n; ++k) s += eigenvectors(i, k) * eigenvalues[k] * std::conj(eigenvectors(j, k));
      r(i, j) = s;
    }
  return r;
}

SpectralDecomposition hermitian_eigendecompose(const Matrix& m) {
  validate_hermitian(m, "eigendecomposition input");
  const std::size_t n = m.size();
  Matrix a = m;
  Matrix v = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  const double target = kOffDiagonalTolerance * m.frobenius_norm();
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= target) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }
  if (!converged && off_diagonal_norm(a) > target) {
    throw ConvergenceError("Jacobi eigensolver did not converge in " + std::to_string(kMaxSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  SpectralDecomposition out{std::vector<double>(n), Matrix(n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[j]);
    fix_phase(out.eigenvectors, j);
  }
  return out;
}

Observable::Observable(Matrix m) : m_(std::move(m)) { validate_hermitian(m_, "observable"); }

DensityMatrix::DensityMatrix(Matrix m, double positivity_floor)
    : m_(std::move(m)), floor_(positivity_floor), spectrum_{{}, Matrix(1)} {
  if (!(positivity_floor >= 0.0) || !std::isfinite(positivity_floor)) {
    throw DomainError("positivity floor must be a finite non-negative number");
  }
  validate_hermitian(m_, "density matrix");
  const double tr_err = std::abs(m_.trace().real() - 1.0);
  if (tr_err > kTraceTolerance) {
    throw ValidationError("trace", "density matrix: |Tr rho - 1| = " + format_value(tr_err) + " exceeds " +
                                       format_value(kTraceTolerance));
  }
  spectrum_ = hermitian_eigendecompose(m_);
  if (min_eigenvalue() < -kNegativeEigenvalueTolerance) {
    throw ValidationError("positivity", "density matrix: eigenvalue " + format_value(min_eigenvalue()) +
                                            " below -" + format_value(kNegativeEigenvalueTolerance));
  }
}

std::vector<double> DensityMatrix::clamped_eigenvalues() const {
  std::vector<double> out = spectrum_.eigenvalues;
  for (auto& l : out)
    if (l < floor_) l = 0.0;
  return out;
}

void DensityMatrix::require_invertible(const char* operation) const {
  if (!invertible()) {
    throw SingularStateError(std::string(operation) + ": state is not invertible (min eigenvalue " +
                             format_value(min_eigenvalue()) + " < positivity floor " + format_value(floor_) + ")");
  }
}

Observable center(const DensityMatrix& rho, const Observable& a) {
  require_same_size(rho.matrix(), a.matrix(), "center");
  const double mean = trace_of_product(rho.matrix(), a.matrix()).real();
  Matrix c = a.matrix();
  for (std::size_t i = 0; i < c.size(); ++i) c(i, i) -= mean;
  return Observable(std::move(c));
}

Matrix fractional_power(const DensityMatrix& rho, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("fractional power exponent must lie in [0, 1]");
  const auto lambda = rho.clamped_eigenvalues();
  const Matrix& v = rho.spectrum().eigenvectors;
  const std::size_t n = rho.size();
  std::vector<double> powered(n);
  for (std::size_t k = 0; k < n; ++k) powered[k] = lambda[k] == 0.0 ? 0.0 : std::pow(lambda[k], s);
  Matrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < n; ++k) acc += v(i, k) * powered[k] * std::conj(v(j, k));
      r(i, j) = acc;
      r(j, i) = std::conj(acc);
    }
  for (std::size_t i = 0; i < n; ++i) r(i, i) = r(i, i).real();
  return r;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

Matrix to_eigenbasis(const Matrix& m, const SpectralDecomposition& basis) {
  require_same_size(m, basis.eigenvectors, "to_eigenbasis");
  const Matrix& v = basis.eigenvectors;
  return v.adjoint() * m * v;
}

}  // namespace skew
