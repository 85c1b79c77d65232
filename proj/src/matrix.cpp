#include "amgm/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace amgm {

namespace {

void require_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("matrix entries must be finite");
  }
}

void require_same_dim(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw DomainError("matrix dimension mismatch");
}

}  // namespace

Matrix::Matrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {
  if (dim == 0) throw DomainError("matrix dimension must be >= 1");
}

Matrix::Matrix(std::size_t dim, std::vector<double> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  if (dim == 0) throw DomainError("matrix dimension must be >= 1");
  if (data_.size() != dim * dim) throw DomainError("entry count must equal dim^2");
  require_finite(data_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  dim_ = rows.size();
  if (dim_ == 0) throw DomainError("matrix dimension must be >= 1");
  data_.reserve(dim_ * dim_);
  for (const auto& r : rows) {
    if (r.size() != dim_) throw DomainError("matrix must be square");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_);
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  require_finite(m.data_);
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
  const std::size_t d = rows.size();
  std::vector<double> flat;
  flat.reserve(d * d);
  for (const auto& r : rows) {
    if (r.size() != d) throw DomainError("matrix must be square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return Matrix(d, std::move(flat));
}

Matrix Matrix::outer(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DomainError("outer product needs equal lengths");
  Matrix m(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::symmetrized() const {
  Matrix s(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    s(i, i) = (*this)(i, i);
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return s;
}

double Matrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::frobenius() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double Matrix::asymmetry() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
  return m;
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double c) {
  for (double& v : data_) v *= c;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b);
  const std::size_t d = a.dim();
  Matrix c(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < d; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  if (x.size() != a.dim()) throw DomainError("matrix-vector dimension mismatch");
  Vector y(a.dim(), 0.0);
  for (std::size_t i = 0; i < a.dim(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

Matrix gram(const Matrix& x) {
  const std::size_t d = x.dim();
  Matrix g(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += x(k, i) * x(k, j);
      g(i, j) = s;
      g(j, i) = s;
    }
  }
  return g;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b);
  double m = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) m = std::max(m, std::abs(da[i] - db[i]));
  return m;
}

bool Spectrum::is_sorted() const {
  return std::is_sorted(values.begin(), values.end(), std::greater<>{});
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("dot product length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) {
  // Scaled to avoid overflow on large entries.
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double v : a) {
    const double t = v / scale;
    s += t * t;
  }
  return scale * std::sqrt(s);
}

Vector axpy(double alpha, std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("axpy length mismatch");
  Vector out(y.begin(), y.end());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += alpha * x[i];
  return out;
}

}  // namespace amgm
