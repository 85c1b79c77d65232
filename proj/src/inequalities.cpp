#include "amgm/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "amgm/linalg.hpp"
#include "amgm/wedge.hpp"

namespace amgm {

namespace {

void require_same_dim(const Matrix& a, const Matrix& b, const char* what) {
  if (a.dim() != b.dim()) throw DomainError(std::string(what) + ": dimension mismatch");
}

void require_alt_params(double r, double s, const char* what) {
  if (!std::isfinite(r) || r < 1.0) throw DomainError(std::string(what) + ": r must be >= 1");
  if (!std::isfinite(s) || !(s > 0.0)) throw DomainError(std::string(what) + ": exponent must be > 0");
}

EigenDecomposition psd_eigen_snapped(const Matrix& a) {
  auto eig = sym_eigen(a.symmetrized());
  clean_psd_spectrum(eig.values.values, kSpectralTol, /*strict=*/true);
  return eig;
}

/// Eigendecompositions of A and B with near-zero eigenvalues snapped.
struct PsdPair {
  EigenDecomposition a;
  EigenDecomposition b;
};

PsdPair psd_pair(const Matrix& a, const Matrix& b, const char* what) {
  require_same_dim(a, b, what);
  require_psd(a, what);
  require_psd(b, what);
  return {psd_eigen_snapped(a), psd_eigen_snapped(b)};
}

double power_or_zero(double lam, double p) { return lam == 0.0 ? 0.0 : std::pow(lam, p); }

Matrix power_matrix(const EigenDecomposition& eig, double p) {
  return spectral_map(eig, [p](double lam) { return power_or_zero(lam, p); });
}

/// Singular values of F = A^{r/2}Bʳ, so that BʳAʳBʳ = FᵀF; r = 1 gives the
/// factor of BAB. Values at or below kFactorSnap·‖A^{r/2}‖‖Bʳ‖ are roundoff
/// and become exact zeros.
struct Factor {
  SingularDecomposition svd;
  double cutoff = 0.0;
};

Factor alt_factor(const PsdPair& p, double r) {
  const Matrix f = power_matrix(p.a, 0.5 * r) * power_matrix(p.b, r);
  const double scale = power_or_zero(p.a.values[0], 0.5 * r) * power_or_zero(p.b.values[0], r);
  return {jacobi_svd(f), kFactorSnap * scale};
}

/// Eigenvalues of (FᵀF)^q, non-increasing.
Spectrum factor_power_spectrum(const Factor& f, double q) {
  Spectrum out = f.svd.values;
  for (double& v : out.values) v = v <= f.cutoff ? 0.0 : std::pow(v, 2.0 * q);
  return out;
}

/// (FᵀF)^q = V·diag(σ^{2q})·Vᵀ.
Matrix factor_power(const Factor& f, double q) {
  return spectral_map({factor_power_spectrum(f, q), f.svd.right, 0}, [](double v) { return v; });
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

/// ∏_{i<=k} λ_i(BʳAʳBʳ) as σ₁(∧ᵏA^{r/2} · ∧ᵏBʳ)², the compounds assembled
/// from the eigendecompositions; returns σ₁ after snapping.
double compound_factor_top(const PsdPair& p, std::size_t k, double r) {
  const Matrix f = compound_of_power(p.a, k, 0.5 * r) * compound_of_power(p.b, k, r);
  double scale = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    scale *= power_or_zero(p.a.values[i], 0.5 * r) * power_or_zero(p.b.values[i], r);
  }
  const double top = jacobi_svd(f).values[0];
  return top <= kFactorSnap * scale ? 0.0 : top;
}

}  // namespace

GapReport pair_check(const Matrix& a, const Matrix& b, const NormSpec& spec, double epsilon) {
  require_same_dim(a, b, "pair_check");
  require_psd(a, "pair_check");
  require_psd(b, "pair_check");
  const double lhs = ui_norm(spec, a * a) + ui_norm(spec, b * b);
  const double rhs = ui_norm(spec, a * b) + ui_norm(spec, b * a);
  auto rep = make_gap("pair_check", lhs, rhs, epsilon);
  rep.param("norm", to_string(spec));
  return rep;
}

GapReport holder_triple_check(const Matrix& x1, const Matrix& x2, const Matrix& x3,
                              const NormSpec& spec, double epsilon) {
  require_same_dim(x1, x2, "holder_triple_check");
  require_same_dim(x1, x3, "holder_triple_check");
  // σ(|X|³) = σ(X)³
  double lhs = 0.0;
  for (const Matrix* x : {&x1, &x2, &x3}) {
    Spectrum sv = singular_values(*x);
    for (double& v : sv.values) v = v * v * v;
    lhs += gauge_eval(spec, sv);
  }
  lhs /= 3.0;
  const double rhs = ui_norm(spec, x1 * x2 * x3);
  auto rep = make_gap("holder_triple_check", lhs, rhs, epsilon);
  rep.param("norm", to_string(spec));
  return rep;
}

GapReport sandwich_check(const Matrix& x1, const Matrix& x2, const Matrix& x3,
                         const NormSpec& spec, double epsilon) {
  require_same_dim(x1, x2, "sandwich_check");
  require_same_dim(x1, x3, "sandwich_check");
  require_psd(x2, "sandwich_check");
  const double lhs =
      0.5 * ui_norm(spec, x1 * x2 * x1.transpose()) + 0.5 * ui_norm(spec, x3.transpose() * x2 * x3);
  const double rhs = ui_norm(spec, x1 * x2 * x3);
  auto rep = make_gap("sandwich_check", lhs, rhs, epsilon);
  rep.param("norm", to_string(spec));
  return rep;
}

GapReport alt_trace_check(const Matrix& a, const Matrix& b, double r, double q, double epsilon) {
  require_alt_params(r, q, "alt_trace_check");
  const auto p = psd_pair(a, b, "alt_trace_check");
  const double lhs = sum(factor_power_spectrum(alt_factor(p, r), q).values);
  const double rhs = sum(factor_power_spectrum(alt_factor(p, 1.0), r * q).values);
  auto rep = make_gap("alt_trace_check", lhs, rhs, epsilon);
  rep.param("r", r).param("q", q);
  return rep;
}

GapReport alt_norm_check(const Matrix& a, const Matrix& b, double r, double s,
                         const NormSpec& spec, double epsilon) {
  require_alt_params(r, s, "alt_norm_check");
  const auto p = psd_pair(a, b, "alt_norm_check");
  // Singular values of a PSD matrix are its eigenvalues.
  const double lhs = gauge_eval(spec, factor_power_spectrum(alt_factor(p, r), s));
  const double rhs = gauge_eval(spec, factor_power_spectrum(alt_factor(p, 1.0), r * s));
  auto rep = make_gap("alt_norm_check", lhs, rhs, epsilon);
  rep.param("r", r).param("s", s).param("norm", to_string(spec));
  return rep;
}

GapReport alt4_check(const Matrix& a, const Matrix& b, const NormSpec& spec, double epsilon) {
  require_same_dim(a, b, "alt4_check");
  require_psd(a, "alt4_check");
  require_psd(b, "alt4_check");
  const double lhs = ui_norm(spec, b * b * a);
  const double rhs = ui_norm(spec, b * a * b);
  auto rep = make_gap("alt4_check", lhs, rhs, epsilon);
  rep.param("norm", to_string(spec));
  return rep;
}

std::vector<GapReport> eig_product_check(const Matrix& a, const Matrix& b, double r, double s,
                                         double epsilon) {
  require_alt_params(r, s, "eig_product_check");
  const auto p = psd_pair(a, b, "eig_product_check");
  const std::size_t d = a.dim();
  const double log_floor = std::log(kProductFloor);
  const double log_ceiling = std::log(1e300);

  std::vector<GapReport> out;
  out.reserve(d);
  for (std::size_t k = 1; k <= d; ++k) {
    // Products of the top k eigenvalues of BʳAʳBʳ and of BAB.
    const double sigma_powered = compound_factor_top(p, k, r);
    const double sigma_plain = compound_factor_top(p, k, 1.0);
    const double log_lhs = 2.0 * s * std::log(sigma_powered);
    const double log_rhs = 2.0 * r * s * std::log(sigma_plain);

    const auto in_linear_range = [&](double v) { return v >= log_floor && v <= log_ceiling; };
    GapReport rep;
    if (in_linear_range(log_lhs) && in_linear_range(log_rhs)) {
      rep = make_gap("eig_product_check", std::pow(sigma_powered, 2.0 * s),
                     std::pow(sigma_plain, 2.0 * r * s), epsilon);
      rep.param("domain", "linear");
    } else {
      rep = make_gap("eig_product_check", std::max(log_lhs, log_floor),
                     std::max(log_rhs, log_floor), epsilon);
      rep.param("domain", "log");
    }
    rep.param("k", std::to_string(k)).param("r", r).param("s", s);

    if (k == 1) {
      const auto op = alt_norm_check(a, b, r, s, NormSpec::op(), epsilon);
      const double lin_lhs = std::pow(sigma_powered, 2.0 * s);
      const double lin_rhs = std::pow(sigma_plain, 2.0 * r * s);
      const double scale = std::max({1.0, std::abs(op.lhs), std::abs(op.rhs)});
      const double dev =
          std::max(std::abs(lin_lhs - op.lhs), std::abs(lin_rhs - op.rhs)) / scale;
      rep.param("operator_norm_deviation", dev);
      if (!(dev <= 1e-8)) rep.pass = false;
    }
    out.push_back(std::move(rep));
  }
  return out;
}

bool weakly_majorizes(const Spectrum& y, const Spectrum& x, double tol) {
  if (x.size() != y.size()) throw DomainError("weakly_majorizes: length mismatch");
  if (!x.is_sorted() || !y.is_sorted()) throw DomainError("weakly_majorizes: spectrum not sorted");
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    if (sx > sy + tol * std::max(1.0, std::abs(sy))) return false;
  }
  return true;
}

GapReport majorization_bridge_check(const Matrix& a, const Matrix& b, double r, double s,
                                    double epsilon) {
  require_alt_params(r, s, "majorization_bridge_check");
  const auto p = psd_pair(a, b, "majorization_bridge_check");
  const Factor powered = alt_factor(p, r);
  const Factor plain = alt_factor(p, 1.0);
  const Spectrum major = factor_power_spectrum(powered, s);
  const Spectrum minor = factor_power_spectrum(plain, r * s);
  const Matrix major_m = factor_power(powered, s);
  const Matrix minor_m = factor_power(plain, r * s);

  double sy = 0.0;
  double sx = 0.0;
  double worst = std::numeric_limits<double>::infinity();
  double worst_y = 0.0;
  double worst_x = 0.0;
  std::size_t worst_k = 1;
  double fan_dev = 0.0;
  for (std::size_t k = 1; k <= major.size(); ++k) {
    sy += major[k - 1];
    sx += minor[k - 1];
    const double scale = std::max({1.0, std::abs(sy), std::abs(sx)});
    const double margin = (sy - sx) / scale;
    if (margin < worst) {
      worst = margin;
      worst_y = sy;
      worst_x = sx;
      worst_k = k;
    }
    const auto fan = NormSpec::kyfan(static_cast<int>(k));
    const double fan_diff = ui_norm(fan, major_m) - ui_norm(fan, minor_m);
    fan_dev = std::max(fan_dev, std::abs(fan_diff - (sy - sx)) / scale);
  }
  auto rep = make_gap("majorization_bridge_check", worst_y, worst_x, epsilon);
  rep.param("k", std::to_string(worst_k)).param("r", r).param("s", s);
  rep.param("fan_deviation", fan_dev);
  if (!(fan_dev <= 1e-8)) rep.pass = false;
  return rep;
}

double psd_order_check(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "psd_order_check");
  require_psd(a, "psd_order_check");
  require_psd(b, "psd_order_check");
  const Matrix mean = 0.5 * (a + b);
  const Matrix sym_product = 0.5 * (a * b + b * a);
  return min_eigenvalue((mean * mean - sym_product).symmetrized());
}

}  // namespace amgm
