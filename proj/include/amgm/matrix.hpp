#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace amgm {

using Vector = std::vector<double>;

/// Default relative tolerance for inequality and reconstruction checks.
inline constexpr double kDefaultEpsilon = 1e-8;

/// Thrown when an operation's input violates its documented precondition
/// (wrong shape, non-PSD input, out-of-range parameter).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an iterative numeric kernel fails to converge.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense real square matrix stored row-major.
///
/// Every constructor validates the shape and rejects non-finite entries.
/// Element access through operator() is unchecked.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim);
  Matrix(std::size_t dim, std::vector<double> row_major);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t dim);
  static Matrix zeros(std::size_t dim) { return Matrix(dim); }
  static Matrix diagonal(std::span<const double> diag);
  static Matrix from_rows(const std::vector<Vector>& rows);
  static Matrix outer(std::span<const double> u, std::span<const double> v);

  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return dim_ == 0; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }

  Matrix transpose() const;
  /// (M + Mᵀ)/2
  Matrix symmetrized() const;
  double trace() const;
  double max_abs() const;
  double frobenius() const;
  /// max |M_ij - M_ji|
  double asymmetry() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double c);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double c) { return a *= c; }
  friend Matrix operator*(double c, Matrix a) { return a *= c; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, std::span<const double> x);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// XᵀX, filled symmetrically so the result is exactly symmetric.
Matrix gram(const Matrix& x);

/// max |a_ij - b_ij|; dimensions must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Eigenvalues or singular values, sorted non-increasing.
struct Spectrum {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  bool is_sorted() const;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
Vector axpy(double alpha, std::span<const double> x, std::span<const double> y);  // alpha*x + y

}  // namespace amgm
