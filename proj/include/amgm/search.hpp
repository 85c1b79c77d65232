#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "amgm/amgm.hpp"
#include "amgm/gap_report.hpp"
#include "amgm/norms.hpp"

namespace amgm {

/// Tolerance used when re-verifying a candidate violation.
inline constexpr double kVerifyEpsilon = 1e-12;

/// JSON fields: m, n_values, d_values, norms, trials, perturb_steps, seed, epsilon.
struct SearchConfig {
  int m = 4;
  std::vector<int> n_values{4, 5};
  std::vector<int> d_values{2, 3, 4};
  std::vector<NormSpec> norms = default_norm_catalog();
  std::uint64_t trials = 10000;
  int perturb_steps = 10;
  std::uint64_t seed = 1;
  double epsilon = kDefaultEpsilon;

  /// Throws DomainError describing the first invalid field.
  void validate() const;
  std::string to_json() const;
  /// Missing fields keep their defaults; unknown fields are rejected.
  static SearchConfig from_json(const std::string& text);
};

/// Fixed histogram edges over the per-trial minimum relative gap.
inline constexpr std::array<double, 7> kGapBucketEdges{-1e-8, 0.0, 1e-6, 1e-4, 1e-3, 1e-2, 1e-1};
inline constexpr std::size_t kGapBuckets = kGapBucketEdges.size() + 1;
std::size_t gap_bucket(double rel_gap);
std::string gap_bucket_label(std::size_t bucket);

struct SearchInstance {
  std::uint64_t trial = 0;
  std::size_t m = 0;
  NormSpec norm;
  MatrixFamily family;
  GapReport report;
};

struct SearchReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double best_gap = 0.0;  // minimum rel_gap over trials and norms
  std::optional<SearchInstance> best_instance;
  std::array<std::uint64_t, kGapBuckets> gap_histogram{};
  /// (trial index, minimum rel_gap of that trial), sorted by index.
  std::vector<std::pair<std::uint64_t, double>> trial_gaps;
  bool violation_found = false;  // best_gap < -epsilon
  bool verified = false;         // violation survived re-evaluation at kVerifyEpsilon
  double verified_gap = 0.0;

  /// Associative and order independent: ties on best_gap go to the lower trial index.
  void merge(const SearchReport& other);
  std::string to_json(const SearchConfig& cfg) const;
};

/// Result of one trial: random family, then greedy perturbation descent.
SearchReport search_trial(const SearchConfig& cfg, std::uint64_t trial);

/// Runs all trials (in parallel when jobs != 1), merges in trial order, and
/// re-verifies the best instance if it violates the inequality.
SearchReport search_counterexample(const SearchConfig& cfg, int jobs = 1);

/// Recomputes the instance's relative gap with compensated sums and reports
/// whether it is below -kVerifyEpsilon.
std::pair<bool, double> reverify(const SearchInstance& instance);

}  // namespace amgm
