#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amgm/matrix.hpp"
#include "amgm/norms.hpp"
#include "amgm/random.hpp"

namespace amgm {

/// Rows with Euclidean norm at or below this are rejected as zero rows.
inline constexpr double kRowTol = 1e-12;

/// Φx = y with rows φ_i, and optionally a known solution x*.
struct LinearSystem {
  std::vector<Vector> rows;
  Vector rhs;
  std::optional<Vector> solution;

  std::size_t n() const noexcept { return rows.size(); }
  std::size_t d() const noexcept { return rows.empty() ? 0 : rows.front().size(); }

  /// Shape checks, no zero rows, and |<φ_i, x*> - y_i| <= tol·max(1, ‖φ_i‖‖x*‖)
  /// when a solution is present.
  void validate(double tol = 1e-9) const;

  /// {"rows": [[...], ...], "rhs": [...], "solution": [...]}; solution optional.
  std::string to_json() const;
  static LinearSystem from_json(const std::string& text);
};

/// Gaussian rows and x*, with y = Φx*.
LinearSystem random_consistent_system(Rng& rng, std::size_t n, std::size_t d);

enum class SampleMode { WithReplacement, WithoutReplacementEpochs, Cyclic };
std::string to_string(SampleMode mode);
/// "wr", "wor" or "cyclic" (long names accepted too).
SampleMode parse_sample_mode(const std::string& text);

/// Zero-based row indices. Without-replacement epochs are independent random
/// permutations of all n rows.
struct Schedule {
  SampleMode mode = SampleMode::Cyclic;
  std::vector<std::size_t> indices;
  std::uint64_t seed = 0;
};
Schedule make_schedule(SampleMode mode, std::size_t n, std::size_t steps, std::uint64_t seed);

/// I - φφᵀ/‖φ‖².
Matrix row_projector(const Vector& phi);

/// Projects x onto the hyperplane <φ, x> = y.
Vector kaczmarz_step(const Vector& x, const Vector& phi, double y);

struct Trajectory {
  std::vector<double> errors;         // ‖x_k - x*‖, k = 0..steps; empty without x*
  std::vector<double> max_residuals;  // max_i |<φ_i, x_k> - y_i|, k = 0..steps
  /// Largest ‖(x_k - x*) - A_{i_k}⋯A_{i_1}(x_0 - x*)‖ over the checkpoints,
  /// divided by ‖x_0 - x*‖ when that is nonzero.
  double max_product_deviation = 0.0;
  std::size_t checkpoints = 0;
};

/// Runs `steps` Kaczmarz updates along the schedule. The projector-product
/// identity is checked every `checkpoint_every` steps and at the end.
Trajectory run_trajectory(const LinearSystem& sys, const Schedule& sch, const Vector& x0,
                          std::size_t steps, std::size_t checkpoint_every = 10);

/// Exact with- or without-replacement mean of |||A_{j1}⋯A_{jm}||| over the
/// row projectors of the system.
double expected_product_norm(const LinearSystem& sys, std::size_t m, SampleMode mode,
                             const NormSpec& spec);

struct BenchConfig {
  std::size_t trials = 200;
  std::size_t steps = 120;
  std::uint64_t seed = 1;
  std::vector<SampleMode> modes{SampleMode::WithReplacement, SampleMode::WithoutReplacementEpochs,
                                SampleMode::Cyclic};
  std::vector<NormSpec> norms = default_norm_catalog();
  std::size_t checkpoint_every = 10;
};

struct ModeSeries {
  SampleMode mode = SampleMode::Cyclic;
  std::vector<Trajectory> trials;
  std::vector<double> mean;  // per step
  std::vector<double> p10;
  std::vector<double> p50;
  std::vector<double> p90;
  std::size_t monotonicity_violations = 0;  // steps where the error grew by > 1e-10 relative
  double max_product_deviation = 0.0;
};

struct ProductNormRow {
  std::size_t m = 0;
  std::string norm;
  double wr = 0.0;
  double wor = 0.0;
};

struct BenchReport {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<ModeSeries> modes;
  std::vector<ProductNormRow> expected_product_norms;

  /// Columns: mode, trial, step, error, max_row_residual.
  std::string to_csv() const;
  /// Per-mode quantiles, epoch-boundary means and the exact product-norm table.
  std::string summary_json(const std::string& config_json) const;
};

/// Linear-interpolation quantile of unsorted data, q in [0, 1].
double quantile(std::vector<double> values, double q);

/// Requires a consistent system with a known solution. Trials start from
/// x_0 = 0 and use schedules seeded by derive_seed(seed, trial).
BenchReport bench_compare(const LinearSystem& sys, const BenchConfig& cfg, int jobs = 1);

}  // namespace amgm
