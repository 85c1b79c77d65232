#include "amgm/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "amgm/linalg.hpp"
#include "amgm/matrix_io.hpp"
#include "amgm/parallel.hpp"
#include "amgm/random.hpp"
#include "json.hpp"

namespace amgm {

using ojson = nlohmann::ordered_json;

void SearchConfig::validate() const {
  if (m < 1 || m > 12) throw DomainError("search: m must lie in [1, 12]");
  if (n_values.empty()) throw DomainError("search: n_values is empty");
  if (d_values.empty()) throw DomainError("search: d_values is empty");
  if (norms.empty()) throw DomainError("search: norms is empty");
  for (int n : n_values) {
    if (n < 1) throw DomainError("search: n values must be positive");
    require_enumerable(static_cast<std::size_t>(n), static_cast<std::size_t>(m), false);
    require_enumerable(static_cast<std::size_t>(n), static_cast<std::size_t>(m), true);
  }
  for (int d : d_values) {
    if (d < 1 || d > 64) throw DomainError("search: d values must lie in [1, 64]");
    if (catalog_for_dim(norms, static_cast<std::size_t>(d)).empty()) {
      throw DomainError("search: no norm applies at d=" + std::to_string(d));
    }
  }
  if (trials > 1'000'000'000ULL) throw DomainError("search: trials exceeds 1e9");
  if (perturb_steps < 0 || perturb_steps > 1'000'000) {
    throw DomainError("search: perturb_steps must lie in [0, 1e6]");
  }
  if (!std::isfinite(epsilon) || !(epsilon > 0.0)) throw DomainError("search: epsilon must be > 0");
}

std::string SearchConfig::to_json() const {
  ojson norms_json = ojson::array();
  for (const auto& spec : norms) norms_json.push_back(to_string(spec));
  ojson j = {{"m", m},
             {"n_values", n_values},
             {"d_values", d_values},
             {"norms", norms_json},
             {"trials", trials},
             {"perturb_steps", perturb_steps},
             {"seed", seed},
             {"epsilon", epsilon}};
  return j.dump();
}

SearchConfig SearchConfig::from_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    throw DomainError(std::string("search config: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("search config: expected a JSON object");
  SearchConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "m") {
        cfg.m = value.get<int>();
      } else if (key == "n_values") {
        cfg.n_values = value.get<std::vector<int>>();
      } else if (key == "d_values") {
        cfg.d_values = value.get<std::vector<int>>();
      } else if (key == "norms") {
        cfg.norms.clear();
        for (const auto& s : value) cfg.norms.push_back(parse_norm(s.get<std::string>()));
      } else if (key == "trials") {
        cfg.trials = value.get<std::uint64_t>();
      } else if (key == "perturb_steps") {
        cfg.perturb_steps = value.get<int>();
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else if (key == "epsilon") {
        cfg.epsilon = value.get<double>();
      } else {
        throw DomainError("search config: unknown field '" + key + "'");
      }
    }
  } catch (const ojson::exception& e) {
    throw DomainError(std::string("search config: ") + e.what());
  }
  return cfg;
}

std::size_t gap_bucket(double rel_gap) {
  std::size_t b = 0;
  while (b < kGapBucketEdges.size() && rel_gap >= kGapBucketEdges[b]) ++b;
  return b;
}

std::string gap_bucket_label(std::size_t bucket) {
  const std::string lo = bucket == 0 ? "-inf" : format_double(kGapBucketEdges[bucket - 1]);
  const std::string hi =
      bucket >= kGapBucketEdges.size() ? "inf" : format_double(kGapBucketEdges[bucket]);
  return "[" + lo + "," + hi + ")";
}

void SearchReport::merge(const SearchReport& other) {
  if (other.best_instance &&
      (!best_instance || other.best_gap < best_gap ||
       (other.best_gap == best_gap && other.best_instance->trial < best_instance->trial))) {
    best_gap = other.best_gap;
    best_instance = other.best_instance;
  }
  trials += other.trials;
  for (std::size_t b = 0; b < kGapBuckets; ++b) gap_histogram[b] += other.gap_histogram[b];
  std::vector<std::pair<std::uint64_t, double>> merged;
  merged.reserve(trial_gaps.size() + other.trial_gaps.size());
  std::merge(trial_gaps.begin(), trial_gaps.end(), other.trial_gaps.begin(),
             other.trial_gaps.end(), std::back_inserter(merged));
  trial_gaps = std::move(merged);
}

namespace {

Matrix draw_member(Rng& rng, std::size_t d) {
  const double u = rng.uniform();
  if (u < 0.4) {
    return random_psd(rng, d, Wishart{rng.integer(1, static_cast<int>(d) + 2)});
  }
  if (u < 0.7) {
    return random_psd(rng, d, Projector{d >= 2 ? static_cast<int>(d) - 1 : 1});
  }
  if (u < 0.9) {
    return random_psd(rng, d, RotatedDiagonal{std::pow(10.0, rng.uniform(0.0, 4.0))});
  }
  // near rank one
  Matrix a = random_psd(rng, d, Wishart{1});
  a += 1e-3 * random_psd(rng, d, Diagonal{});
  return a;
}

struct Evaluation {
  double gap = std::numeric_limits<double>::infinity();
  std::size_t norm_index = 0;
  GapReport report;
};

Evaluation evaluate(const MatrixFamily& f, std::size_t m, const std::vector<NormSpec>& specs,
                    double epsilon) {
  Evaluation best;
  const auto reports = amgm_gaps(f, m, specs, epsilon);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (reports[i].rel_gap < best.gap) {
      best.gap = reports[i].rel_gap;
      best.norm_index = i;
      best.report = reports[i];
    }
  }
  return best;
}

}  // namespace

SearchReport search_trial(const SearchConfig& cfg, std::uint64_t trial) {
  Rng rng(derive_seed(cfg.seed, trial));
  const auto n = static_cast<std::size_t>(cfg.n_values[rng.index(cfg.n_values.size())]);
  const auto d = static_cast<std::size_t>(cfg.d_values[rng.index(cfg.d_values.size())]);
  const auto m = static_cast<std::size_t>(cfg.m);
  const auto specs = catalog_for_dim(cfg.norms, d);

  std::vector<Matrix> members;
  members.reserve(n);
  for (std::size_t i = 0; i < n; ++i) members.push_back(draw_member(rng, d));
  MatrixFamily family(std::move(members));
  Evaluation current = evaluate(family, m, specs, cfg.epsilon);

  double scale = 1e-2;
  int streak = 0;
  for (int step = 0; step < cfg.perturb_steps; ++step) {
    const std::size_t j = rng.index(n);
    Matrix e = random_symmetric(rng, d);
    e *= 1.0 / e.frobenius();
    const double size = ui_norm(NormSpec::op(), family[j]);
    const Matrix candidate = project_psd(family[j] + (scale * (size > 0.0 ? size : 1.0)) * e);
    MatrixFamily trial_family = family.with_member(j, candidate);
    Evaluation trial_eval = evaluate(trial_family, m, specs, cfg.epsilon);
    if (trial_eval.gap < current.gap) {
      family = std::move(trial_family);
      current = std::move(trial_eval);
      streak = 0;
    } else if (++streak >= 10) {
      scale *= 0.5;
      streak = 0;
    }
  }

  SearchReport out;
  out.trials = 1;
  out.seed = cfg.seed;
  out.best_gap = current.gap;
  out.best_instance = SearchInstance{trial, m, specs[current.norm_index], family, current.report};
  out.best_instance->report.seed = derive_seed(cfg.seed, trial);
  out.gap_histogram[gap_bucket(current.gap)] = 1;
  out.trial_gaps.emplace_back(trial, current.gap);
  return out;
}

std::pair<bool, double> reverify(const SearchInstance& instance) {
  const auto rep = amgm_gap(instance.family, instance.m, instance.norm, kVerifyEpsilon);
  return {rep.rel_gap < -kVerifyEpsilon, rep.rel_gap};
}

SearchReport search_counterexample(const SearchConfig& cfg, int jobs) {
  cfg.validate();
  std::vector<SearchReport> parts(cfg.trials);
  parallel_for(cfg.trials, resolve_jobs(jobs),
               [&](std::size_t i) { parts[i] = search_trial(cfg, i); });
  SearchReport out;
  out.seed = cfg.seed;
  out.best_gap = std::numeric_limits<double>::infinity();
  for (const auto& part : parts) out.merge(part);
  if (!out.best_instance) out.best_gap = 0.0;
  out.violation_found = out.best_instance && out.best_gap < -cfg.epsilon;
  if (out.violation_found) {
    const auto [ok, gap] = reverify(*out.best_instance);
    out.verified = ok;
    out.verified_gap = gap;
  }
  return out;
}

std::string SearchReport::to_json(const SearchConfig& cfg) const {
  ojson j;
  j["config"] = ojson::parse(cfg.to_json());
  j["trials"] = trials;
  j["seed"] = seed;
  j["best_gap"] = best_gap;
  j["violation_found"] = violation_found;
  j["verified"] = verified;
  if (violation_found) j["verified_gap"] = verified_gap;
  if (best_instance) {
    ojson family = ojson::array();
    for (const auto& a : best_instance->family.members()) {
      ojson rows = ojson::array();
      for (std::size_t i = 0; i < a.dim(); ++i) {
        const auto row = a.row(i);
        rows.push_back(std::vector<double>(row.begin(), row.end()));
      }
      family.push_back(rows);
    }
    j["best_instance"] = {{"trial", best_instance->trial},
                          {"m", best_instance->m},
                          {"n", best_instance->family.n()},
                          {"d", best_instance->family.d()},
                          {"norm", to_string(best_instance->norm)},
                          {"report", ojson::parse(amgm::to_json(best_instance->report))},
                          {"family", family}};
  } else {
    j["best_instance"] = nullptr;
  }
  ojson hist = ojson::array();
  for (std::size_t b = 0; b < kGapBuckets; ++b) {
    hist.push_back({{"bucket", gap_bucket_label(b)}, {"count", gap_histogram[b]}});
  }
  j["gap_histogram"] = hist;
  ojson gaps = ojson::array();
  for (const auto& [trial, gap] : trial_gaps) gaps.push_back({trial, gap});
  j["trial_gaps"] = gaps;
  return j.dump(2);
}

}  // namespace amgm
