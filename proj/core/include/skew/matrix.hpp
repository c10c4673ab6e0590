#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace skew {

using Complex = std::complex<double>;

/// Largest supported dimension.
inline constexpr std::size_t kMaxDimension = 64;

/// Dense square complex matrix, row-major.
///
/// A plain value type: copies are deep, there is no aliasing between instances.
/// Dimension is fixed at construction and must lie in [1, kMaxDimension].
class Matrix {
 public:
  /// n x n zero matrix.
  explicit Matrix(std::size_t n);
  Matrix(std::size_t n, std::vector<Complex> row_major);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);

  std::size_t size() const noexcept { return n_; }

  Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * n_ + j];
  }

  std::span<const Complex> data() const noexcept { return data_; }

  Matrix adjoint() const;
  Complex trace() const;
  /// max_ij |m_ij|
  double max_abs() const;
  double frobenius_norm() const;
  bool is_finite() const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(Complex s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_;
  std::vector<Complex> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(Complex s, Matrix m);
Matrix operator*(Matrix m, Complex s);

/// Tr[AB] without forming the product.
Complex trace_of_product(const Matrix& a, const Matrix& b);

/// max_ij |a_ij - b_ij|
double max_abs_diff(const Matrix& a, const Matrix& b);

/// max_ij |m_ij - conj(m_ji)|
double hermiticity_defect(const Matrix& m);

/// Throws DimensionError unless both operands have the same size.
void require_same_size(const Matrix& a, const Matrix& b, const char* what);

}  // namespace skew
