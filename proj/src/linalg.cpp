#include "amgm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace amgm {

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t d = a.dim();
  for (std::size_t k = 0; k < d; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    const double np = c * akp - s * akq;
    const double nq = s * akp + c * akq;
    a(k, p) = np;
    a(p, k) = np;
    a(k, q) = nq;
    a(q, k) = nq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

double spectral_radius(const std::vector<double>& values) {
  double r = 0.0;
  for (double v : values) r = std::max(r, std::abs(v));
  return r;
}

}  // namespace

EigenDecomposition sym_eigen(const Matrix& s, double tol, int max_sweeps) {
  if (s.empty()) throw DomainError("sym_eigen: empty matrix");
  if (!(tol > 0.0)) throw DomainError("sym_eigen: tol must be positive");
  if (!s.all_finite()) throw DomainError("sym_eigen: non-finite entries");
  if (s.asymmetry() > tol * std::max(1.0, s.max_abs())) {
    throw DomainError("sym_eigen: matrix is not symmetric within tolerance");
  }
  const std::size_t d = s.dim();
  Matrix a = s.symmetrized();
  Matrix v = Matrix::identity(d);
  const double fro = a.frobenius();

  int sweeps = 0;
  bool converged = false;
  for (; sweeps <= max_sweeps; ++sweeps) {
    if (off_diagonal_norm(a) <= tol * fro) {
      converged = true;
      break;
    }
    if (sweeps == max_sweeps) break;
    for (std::size_t p = 0; p + 1 < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) rotate(a, v, p, q);
  }
  if (!converged) {
    throw ConvergenceError("sym_eigen: no convergence within " + std::to_string(max_sweeps) +
                           " sweeps");
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenDecomposition out;
  out.values.values.resize(d);
  out.vectors = Matrix(d);
  out.sweeps = sweeps;
  for (std::size_t c = 0; c < d; ++c) {
    const std::size_t src = order[c];
    out.values.values[c] = a(src, src);
    double sign = 1.0;
    for (std::size_t r = 0; r < d; ++r) {
      if (std::abs(v(r, src)) > 1e-12) {
        sign = v(r, src) > 0.0 ? 1.0 : -1.0;
        break;
      }
    }
    for (std::size_t r = 0; r < d; ++r) out.vectors(r, c) = sign * v(r, src);
  }
  return out;
}

void clean_psd_spectrum(std::vector<double>& eigenvalues, double tol, bool strict) {
  const double rho = spectral_radius(eigenvalues);
  for (double& lam : eigenvalues) {
    if (std::abs(lam) <= tol * rho) {
      lam = 0.0;
    } else if (lam < 0.0) {
      if (strict) throw DomainError("matrix is not positive-semidefinite within tolerance");
      lam = 0.0;
    }
  }
}

Matrix spectral_map(const EigenDecomposition& eig, const std::function<double(double)>& f) {
  const std::size_t d = eig.vectors.dim();
  std::vector<double> mapped(d);
  for (std::size_t j = 0; j < d; ++j) mapped[j] = f(eig.values[j]);
  Matrix out(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = i; k < d; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += eig.vectors(i, j) * mapped[j] * eig.vectors(k, j);
      out(i, k) = s;
      out(k, i) = s;
    }
  }
  return out;
}

SingularDecomposition jacobi_svd(const Matrix& x, double tol, int max_sweeps) {
  if (x.empty()) throw DomainError("jacobi_svd: empty matrix");
  if (!x.all_finite()) throw DomainError("jacobi_svd: non-finite entries");
  const std::size_t d = x.dim();
  if (!(tol > 0.0)) {
    tol = std::max(1e-15, 2.0 * static_cast<double>(d) * std::numeric_limits<double>::epsilon());
  }
  // Work on columns stored as rows of the transpose for contiguous access.
  Matrix cols = x.transpose();
  Matrix v = Matrix::identity(d);  // rows are the columns of V
  // Columns this small are roundoff; rotating them never settles.
  const double negligible = std::numeric_limits<double>::epsilon() * x.frobenius();
  const double negligible_sq = negligible * negligible;
  int sweeps = 0;
  bool converged = false;
  for (; sweeps <= max_sweeps; ++sweeps) {
    bool rotated = false;
    if (sweeps == max_sweeps) break;
    for (std::size_t i = 0; i + 1 < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        double alpha = 0.0;
        double beta = 0.0;
        double gamma = 0.0;
        for (std::size_t r = 0; r < d; ++r) {
          alpha += cols(i, r) * cols(i, r);
          beta += cols(j, r) * cols(j, r);
          gamma += cols(i, r) * cols(j, r);
        }
        if (gamma == 0.0 || alpha <= negligible_sq || beta <= negligible_sq) continue;
        if (std::abs(gamma) <= tol * std::sqrt(alpha) * std::sqrt(beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t r = 0; r < d; ++r) {
          const double xi = cols(i, r);
          const double xj = cols(j, r);
          cols(i, r) = c * xi - s * xj;
          cols(j, r) = s * xi + c * xj;
          const double vi = v(i, r);
          const double vj = v(j, r);
          v(i, r) = c * vi - s * vj;
          v(j, r) = s * vi + c * vj;
        }
      }
    }
    if (!rotated) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw ConvergenceError("jacobi_svd: no convergence within " + std::to_string(max_sweeps) +
                           " sweeps");
  }
  std::vector<double> sigma(d);
  for (std::size_t i = 0; i < d; ++i) sigma[i] = norm2(cols.row(i));
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });
  SingularDecomposition out;
  out.sweeps = sweeps;
  out.values.values.resize(d);
  out.right = Matrix(d);
  for (std::size_t c = 0; c < d; ++c) {
    out.values.values[c] = sigma[order[c]];
    for (std::size_t r = 0; r < d; ++r) out.right(r, c) = v(order[c], r);
  }
  return out;
}

Spectrum singular_values(const Matrix& x) { return jacobi_svd(x).values; }

Matrix matrix_abs(const Matrix& x) {
  const auto svd = jacobi_svd(x);
  return spectral_map({svd.values, svd.right, svd.sweeps}, [](double v) { return v; });
}

namespace {

EigenDecomposition psd_eigen(const Matrix& a, double tol) {
  if (a.asymmetry() > kDefaultEpsilon * std::max(1.0, a.max_abs())) {
    throw DomainError("psd_power: matrix is not symmetric");
  }
  auto eig = sym_eigen(a.symmetrized());
  clean_psd_spectrum(eig.values.values, tol, /*strict=*/true);
  return eig;
}

void require_positive_exponent(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("psd_power: exponent must be > 0");
}

}  // namespace

Matrix psd_power(const Matrix& a, double s, double tol) {
  require_positive_exponent(s);
  const auto eig = psd_eigen(a, tol);
  if (s == 1.0) return a.symmetrized();
  return spectral_map(eig, [s](double lam) { return lam == 0.0 ? 0.0 : std::pow(lam, s); });
}

Spectrum psd_power_spectrum(const Matrix& a, double s, double tol) {
  require_positive_exponent(s);
  auto eig = psd_eigen(a, tol);
  for (double& lam : eig.values.values) lam = lam == 0.0 ? 0.0 : std::pow(lam, s);
  return eig.values;
}

Matrix clamped_psd_power(const Matrix& a, double s, double tol) {
  require_positive_exponent(s);
  auto eig = sym_eigen(a.symmetrized());
  clean_psd_spectrum(eig.values.values, tol, /*strict=*/false);
  if (s == 1.0) return spectral_map(eig, [](double lam) { return lam; });
  return spectral_map(eig, [s](double lam) { return lam == 0.0 ? 0.0 : std::pow(lam, s); });
}

Spectrum clamped_psd_power_spectrum(const Matrix& a, double s, double tol) {
  require_positive_exponent(s);
  auto eig = sym_eigen(a.symmetrized());
  clean_psd_spectrum(eig.values.values, tol, /*strict=*/false);
  for (double& lam : eig.values.values) lam = lam == 0.0 ? 0.0 : std::pow(lam, s);
  return eig.values;
}

Matrix project_psd(const Matrix& s) {
  auto eig = sym_eigen(s.symmetrized());
  return spectral_map(eig, [](double lam) { return std::max(lam, 0.0); });
}

double min_eigenvalue(const Matrix& s) {
  return sym_eigen(s).values.values.back();
}

bool is_psd(const Matrix& a, double tol) {
  if (!a.all_finite()) return false;
  if (a.asymmetry() > kDefaultEpsilon * std::max(1.0, a.max_abs())) return false;
  const auto eig = sym_eigen(a.symmetrized());
  const double rho = spectral_radius(eig.values.values);
  return eig.values.values.back() >= -tol * rho;
}

void require_psd(const Matrix& a, const char* what, double tol) {
  if (!is_psd(a, tol)) throw DomainError(std::string(what) + ": input is not positive-semidefinite");
}

LuDecomposition lu_decompose(const Matrix& a) {
  const std::size_t d = a.dim();
  LuDecomposition out{a, std::vector<std::size_t>(d), 1, false};
  std::iota(out.perm.begin(), out.perm.end(), 0);
  Matrix& lu = out.lu;
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < d; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        piv = i;
      }
    }
    if (piv != k) {
      for (std::size_t j = 0; j < d; ++j) std::swap(lu(k, j), lu(piv, j));
      std::swap(out.perm[k], out.perm[piv]);
      out.sign = -out.sign;
    }
    const double pivot = lu(k, k);
    if (pivot == 0.0) {
      out.singular = true;
      continue;
    }
    for (std::size_t i = k + 1; i < d; ++i) {
      const double l = lu(i, k) / pivot;
      lu(i, k) = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < d; ++j) lu(i, j) -= l * lu(k, j);
    }
  }
  return out;
}

double determinant(const Matrix& a) {
  const auto f = lu_decompose(a);
  if (f.singular) return 0.0;
  double det = f.sign;
  for (std::size_t i = 0; i < a.dim(); ++i) det *= f.lu(i, i);
  return det;
}

Matrix inverse(const Matrix& a) {
  const auto f = lu_decompose(a);
  if (f.singular) throw DomainError("inverse: matrix is singular");
  const std::size_t d = a.dim();
  Matrix inv(d);
  Vector y(d);
  for (std::size_t col = 0; col < d; ++col) {
    // Solve L y = P e_col, then U x = y.
    for (std::size_t i = 0; i < d; ++i) {
      double v = f.perm[i] == col ? 1.0 : 0.0;
      for (std::size_t j = 0; j < i; ++j) v -= f.lu(i, j) * y[j];
      y[i] = v;
    }
    for (std::size_t ii = d; ii-- > 0;) {
      double v = y[ii];
      for (std::size_t j = ii + 1; j < d; ++j) v -= f.lu(ii, j) * inv(j, col);
      inv(ii, col) = v / f.lu(ii, ii);
    }
  }
  return inv;
}

}  // namespace amgm
