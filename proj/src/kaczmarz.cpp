#include "amgm/kaczmarz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "amgm/amgm.hpp"
#include "amgm/matrix_io.hpp"
#include "amgm/parallel.hpp"
#include "json.hpp"

namespace amgm {

using ojson = nlohmann::ordered_json;

void LinearSystem::validate(double tol) const {
  if (rows.empty()) throw DomainError("linear system has no rows");
  if (rhs.size() != rows.size()) throw DomainError("linear system: rhs length differs from row count");
  const std::size_t dim = d();
  if (dim == 0) throw DomainError("linear system: rows are empty");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) throw DomainError("linear system: ragged rows");
    for (double v : rows[i]) {
      if (!std::isfinite(v)) throw DomainError("linear system: non-finite entry");
    }
    if (norm2(rows[i]) <= kRowTol) {
      throw DomainError("linear system: row " + std::to_string(i + 1) + " is zero");
    }
  }
  if (solution) {
    if (solution->size() != dim) throw DomainError("linear system: solution has wrong length");
    const double xs = norm2(*solution);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double r = dot(rows[i], *solution) - rhs[i];
      if (std::abs(r) > tol * std::max(1.0, norm2(rows[i]) * xs)) {
        throw DomainError("linear system: solution violates row " + std::to_string(i + 1));
      }
    }
  }
}

std::string LinearSystem::to_json() const {
  ojson j = {{"rows", rows}, {"rhs", rhs}};
  if (solution) j["solution"] = *solution;
  return j.dump();
}

LinearSystem LinearSystem::from_json(const std::string& text) {
  LinearSystem sys;
  try {
    const auto j = ojson::parse(text);
    sys.rows = j.at("rows").get<std::vector<Vector>>();
    sys.rhs = j.at("rhs").get<Vector>();
    if (j.contains("solution") && !j["solution"].is_null()) {
      sys.solution = j["solution"].get<Vector>();
    }
  } catch (const ojson::exception& e) {
    throw DomainError(std::string("system file: ") + e.what());
  }
  sys.validate();
  return sys;
}

LinearSystem random_consistent_system(Rng& rng, std::size_t n, std::size_t d) {
  if (n < 1 || d < 1) throw DomainError("random system needs n >= 1 and d >= 1");
  LinearSystem sys;
  sys.solution = random_gaussian_vector(rng, d);
  for (std::size_t i = 0; i < n; ++i) {
    Vector row = random_gaussian_vector(rng, d);
    while (norm2(row) <= kRowTol) row = random_gaussian_vector(rng, d);
    sys.rhs.push_back(dot(row, *sys.solution));
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

std::string to_string(SampleMode mode) {
  switch (mode) {
    case SampleMode::WithReplacement:
      return "wr";
    case SampleMode::WithoutReplacementEpochs:
      return "wor";
    case SampleMode::Cyclic:
      return "cyclic";
  }
  return "?";
}

SampleMode parse_sample_mode(const std::string& text) {
  if (text == "wr" || text == "with-replacement") return SampleMode::WithReplacement;
  if (text == "wor" || text == "without-replacement" || text == "without-replacement-epochs") {
    return SampleMode::WithoutReplacementEpochs;
  }
  if (text == "cyclic") return SampleMode::Cyclic;
  throw DomainError("unknown sampling mode '" + text + "'");
}

Schedule make_schedule(SampleMode mode, std::size_t n, std::size_t steps, std::uint64_t seed) {
  if (n < 1) throw DomainError("schedule needs n >= 1");
  Schedule sch{mode, {}, seed};
  sch.indices.reserve(steps);
  Rng rng(seed);
  switch (mode) {
    case SampleMode::WithReplacement:
      for (std::size_t k = 0; k < steps; ++k) sch.indices.push_back(rng.index(n));
      break;
    case SampleMode::WithoutReplacementEpochs:
      while (sch.indices.size() < steps) {
        for (std::size_t i : rng.permutation(n)) {
          if (sch.indices.size() == steps) break;
          sch.indices.push_back(i);
        }
      }
      break;
    case SampleMode::Cyclic:
      for (std::size_t k = 0; k < steps; ++k) sch.indices.push_back(k % n);
      break;
  }
  return sch;
}

Matrix row_projector(const Vector& phi) {
  const double nrm = norm2(phi);
  if (!(nrm > kRowTol)) throw DomainError("row_projector: zero row");
  const std::size_t d = phi.size();
  Matrix p = Matrix::identity(d);
  const double inv = 1.0 / (nrm * nrm);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) p(i, j) -= phi[i] * phi[j] * inv;
  return p;
}

Vector kaczmarz_step(const Vector& x, const Vector& phi, double y) {
  if (x.size() != phi.size()) throw DomainError("kaczmarz_step: dimension mismatch");
  const double nrm = norm2(phi);
  if (!(nrm > kRowTol)) throw DomainError("kaczmarz_step: zero row");
  return axpy((y - dot(phi, x)) / (nrm * nrm), phi, x);
}

namespace {

double max_row_residual(const LinearSystem& sys, const Vector& x) {
  double r = 0.0;
  for (std::size_t i = 0; i < sys.n(); ++i) r = std::max(r, std::abs(dot(sys.rows[i], x) - sys.rhs[i]));
  return r;
}

Vector difference(const Vector& a, const Vector& b) { return axpy(-1.0, b, a); }

}  // namespace

Trajectory run_trajectory(const LinearSystem& sys, const Schedule& sch, const Vector& x0,
                          std::size_t steps, std::size_t checkpoint_every) {
  if (sch.indices.size() < steps) throw DomainError("run_trajectory: schedule underrun");
  if (x0.size() != sys.d()) throw DomainError("run_trajectory: x0 has wrong length");
  for (std::size_t i : sch.indices) {
    if (i >= sys.n()) throw DomainError("run_trajectory: schedule index out of range");
  }
  Trajectory out;
  const bool known = sys.solution.has_value();
  Vector e0;
  double e0_norm = 0.0;
  Matrix product = Matrix::identity(sys.d());
  if (known) {
    e0 = difference(x0, *sys.solution);
    e0_norm = norm2(e0);
    out.errors.push_back(e0_norm);
  }
  out.max_residuals.push_back(max_row_residual(sys, x0));

  Vector x = x0;
  for (std::size_t k = 1; k <= steps; ++k) {
    const std::size_t row = sch.indices[k - 1];
    x = kaczmarz_step(x, sys.rows[row], sys.rhs[row]);
    out.max_residuals.push_back(max_row_residual(sys, x));
    if (!known) continue;
    const Vector e = difference(x, *sys.solution);
    out.errors.push_back(norm2(e));
    product = row_projector(sys.rows[row]) * product;
    if ((checkpoint_every > 0 && k % checkpoint_every == 0) || k == steps) {
      const double dev = norm2(difference(e, product * e0));
      out.max_product_deviation =
          std::max(out.max_product_deviation, e0_norm > 0.0 ? dev / e0_norm : dev);
      ++out.checkpoints;
    }
  }
  return out;
}

double expected_product_norm(const LinearSystem& sys, std::size_t m, SampleMode mode,
                             const NormSpec& spec) {
  sys.validate();
  std::vector<Matrix> projectors;
  projectors.reserve(sys.n());
  for (const auto& row : sys.rows) projectors.push_back(row_projector(row));
  const MatrixFamily family(std::move(projectors));
  switch (mode) {
    case SampleMode::WithReplacement:
      return wr_mean(family, m, spec);
    case SampleMode::WithoutReplacementEpochs:
      return wor_mean(family, m, spec);
    case SampleMode::Cyclic:
      break;
  }
  throw DomainError("expected_product_norm: mode must be wr or wor");
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw DomainError("quantile of empty data");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

BenchReport bench_compare(const LinearSystem& sys, const BenchConfig& cfg, int jobs) {
  sys.validate();
  if (!sys.solution) throw DomainError("bench_compare needs a system with a known solution");
  if (cfg.trials < 1) throw DomainError("bench_compare needs at least one trial");
  if (cfg.steps < 1) throw DomainError("bench_compare needs at least one step");
  if (cfg.modes.empty()) throw DomainError("bench_compare needs at least one mode");

  BenchReport report;
  report.n = sys.n();
  report.d = sys.d();
  const Vector x0(sys.d(), 0.0);
  const unsigned workers = resolve_jobs(jobs);

  for (SampleMode mode : cfg.modes) {
    ModeSeries series;
    series.mode = mode;
    series.trials.resize(cfg.trials);
    parallel_for(cfg.trials, workers, [&](std::size_t t) {
      const auto sch = make_schedule(mode, sys.n(), cfg.steps, derive_seed(cfg.seed, t));
      series.trials[t] = run_trajectory(sys, sch, x0, cfg.steps, cfg.checkpoint_every);
    });
    std::vector<double> column(cfg.trials);
    for (std::size_t k = 0; k <= cfg.steps; ++k) {
      double sum = 0.0;
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        column[t] = series.trials[t].errors[k];
        sum += column[t];
      }
      series.mean.push_back(sum / static_cast<double>(cfg.trials));
      series.p10.push_back(quantile(column, 0.1));
      series.p50.push_back(quantile(column, 0.5));
      series.p90.push_back(quantile(column, 0.9));
    }
    for (const auto& tr : series.trials) {
      series.max_product_deviation = std::max(series.max_product_deviation, tr.max_product_deviation);
      for (std::size_t k = 1; k < tr.errors.size(); ++k) {
        if (tr.errors[k] > tr.errors[k - 1] + 1e-10 * std::max(1.0, tr.errors[0])) {
          ++series.monotonicity_violations;
        }
      }
    }
    report.modes.push_back(std::move(series));
  }

  const auto specs = catalog_for_dim(cfg.norms, sys.d());
  std::vector<Matrix> projectors;
  for (const auto& row : sys.rows) projectors.push_back(row_projector(row));
  const MatrixFamily family(std::move(projectors));
  for (std::size_t m = 1; m <= 3; ++m) {
    if (m > sys.n()) break;
    if (tuple_count(sys.n(), m, false) > kMaxTuples) break;
    const auto means = norm_means(family, m, specs);
    for (std::size_t s = 0; s < specs.size(); ++s) {
      report.expected_product_norms.push_back({m, to_string(specs[s]), means.wr[s], means.wor[s]});
    }
  }
  return report;
}

std::string BenchReport::to_csv() const {
  std::ostringstream os;
  os << "mode,trial,step,error,max_row_residual\n";
  for (const auto& series : modes) {
    const std::string name = to_string(series.mode);
    for (std::size_t t = 0; t < series.trials.size(); ++t) {
      const auto& tr = series.trials[t];
      for (std::size_t k = 0; k < tr.errors.size(); ++k) {
        os << name << ',' << t << ',' << k << ',' << format_double(tr.errors[k]) << ','
           << format_double(tr.max_residuals[k]) << '\n';
      }
    }
  }
  return os.str();
}

std::string BenchReport::summary_json(const std::string& config_json) const {
  ojson j;
  j["config"] = ojson::parse(config_json);
  j["system"] = {{"n", n}, {"d", d}, {"underdetermined", n < d}};
  ojson mode_json = ojson::object();
  std::vector<double> wr_epoch;
  std::vector<double> wor_epoch;
  for (const auto& series : modes) {
    std::vector<double> finals;
    for (const auto& tr : series.trials) finals.push_back(tr.errors.back());
    ojson epochs = ojson::array();
    std::vector<double> epoch_means;
    for (std::size_t k = n; k < series.mean.size(); k += n) {
      epochs.push_back({{"step", k}, {"mean_error", series.mean[k]}});
      epoch_means.push_back(series.mean[k]);
    }
    if (series.mode == SampleMode::WithReplacement) wr_epoch = epoch_means;
    if (series.mode == SampleMode::WithoutReplacementEpochs) wor_epoch = epoch_means;
    mode_json[to_string(series.mode)] = {
        {"trials", series.trials.size()},
        {"final_error",
         {{"mean", series.mean.back()},
          {"p10", quantile(finals, 0.1)},
          {"p50", quantile(finals, 0.5)},
          {"p90", quantile(finals, 0.9)}}},
        {"epoch_boundaries", epochs},
        {"per_step", {{"mean", series.mean}, {"p10", series.p10}, {"p50", series.p50}, {"p90", series.p90}}},
        {"monotonicity_violations", series.monotonicity_violations},
        {"max_product_deviation", series.max_product_deviation}};
  }
  j["modes"] = mode_json;
  ojson table = ojson::array();
  for (const auto& row : expected_product_norms) {
    table.push_back({{"m", row.m}, {"norm", row.norm}, {"wr", row.wr}, {"wor", row.wor},
                     {"wor_le_wr", row.wor <= row.wr * (1.0 + kDefaultEpsilon) + kDefaultEpsilon}});
  }
  j["expected_product_norms"] = table;
  if (!wr_epoch.empty() && wr_epoch.size() == wor_epoch.size()) {
    double wr_sum = 0.0;
    double wor_sum = 0.0;
    for (std::size_t i = 0; i < wr_epoch.size(); ++i) {
      wr_sum += wr_epoch[i];
      wor_sum += wor_epoch[i];
    }
    j["observation"] = {{"epoch_mean_error_wr", wr_sum / wr_epoch.size()},
                        {"epoch_mean_error_wor", wor_sum / wor_epoch.size()},
                        {"wor_below_wr", wor_sum <= wr_sum}};
  }
  return j.dump(2);
}

}  // namespace amgm
