#include "skew/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "skew/errors.hpp"

namespace skew {

namespace {

void check_dimension(std::size_t n) {
  if (n == 0 || n > kMaxDimension) {
    throw DimensionError("matrix dimension " + std::to_string(n) + " outside [1, " +
                         std::to_string(kMaxDimension) + "]");
  }
}

}  // namespace

Matrix::Matrix(std::size_t n) : n_(n) {
  check_dimension(n);
  data_.assign(n * n, Complex{});
}

Matrix::Matrix(std::size_t n, std::vector<Complex> row_major) : n_(n), data_(std::move(row_major)) {
  check_dimension(n);
  if (data_.size() != n * n) {
    throw DimensionError("expected " + std::to_string(n * n) + " entries, got " +
                         std::to_string(data_.size()));
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) : n_(rows.size()) {
  check_dimension(n_);
  data_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw DimensionError("matrix rows must all have length " + std::to_string(n_));
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

Complex Matrix::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

bool Matrix::is_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require_same_size(*this, rhs, "matrix addition");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require_same_size(*this, rhs, "matrix subtraction");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(Complex s, Matrix m) { return m *= s; }
Matrix operator*(Matrix m, Complex s) { return m *= s; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  require_same_size(lhs, rhs, "matrix product");
  const std::size_t n = lhs.size();
  Matrix r(n);
  // Interleaved re/im views; std::complex guarantees this layout.
  const double* a = reinterpret_cast<const double*>(lhs.data().data());
  const double* b = reinterpret_cast<const double*>(rhs.data().data());
  auto* out = reinterpret_cast<double*>(&r(0, 0));
  for (std::size_t i = 0; i < n; ++i) {
    double* row = out + 2 * i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const double ar = a[2 * (i * n + k)], ai = a[2 * (i * n + k) + 1];
      const double* brow = b + 2 * k * n;
      for (std::size_t j = 0; j < n; ++j) {
        row[2 * j] += ar * brow[2 * j] - ai * brow[2 * j + 1];
        row[2 * j + 1] += ar * brow[2 * j + 1] + ai * brow[2 * j];
      }
    }
  }
  return r;
}

Complex trace_of_product(const Matrix& a, const Matrix& b) {
  require_same_size(a, b, "trace of product");
  Complex t{};
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) t += a(i, k) * b(k, i);
  return t;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_size(a, b, "matrix difference");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

double hermiticity_defect(const Matrix& m) {
  double d = 0.0;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

void require_same_size(const Matrix& a, const Matrix& b, const char* what) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
  }
}

}  // namespace skew
