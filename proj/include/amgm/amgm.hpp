#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "amgm/gap_report.hpp"
#include "amgm/matrix.hpp"
#include "amgm/norms.hpp"
#include "amgm/random.hpp"

namespace amgm {

/// Upper bound on the number of tuples any single enumeration may visit.
inline constexpr std::uint64_t kMaxTuples = 10'000'000;

/// n PSD members of a common dimension d.
class MatrixFamily {
 public:
  MatrixFamily() = default;
  /// Throws DomainError on an empty list, mixed dimensions, or a non-PSD member.
  explicit MatrixFamily(std::vector<Matrix> members);

  std::size_t n() const noexcept { return members_.size(); }
  std::size_t d() const noexcept { return members_.empty() ? 0 : members_.front().dim(); }
  const std::vector<Matrix>& members() const noexcept { return members_; }
  const Matrix& operator[](std::size_t i) const { return members_[i]; }

  MatrixFamily scaled(double c) const;
  MatrixFamily permuted(const std::vector<std::size_t>& order) const;
  MatrixFamily with_member(std::size_t i, Matrix replacement) const;

 private:
  std::vector<Matrix> members_;
};

/// Zero-based member indices (j_1, ..., j_m).
using IndexTuple = std::vector<std::size_t>;

/// n^m when distinct is false, n!/(n-m)! otherwise. Saturates at UINT64_MAX.
std::uint64_t tuple_count(std::size_t n, std::size_t m, bool distinct);

/// Throws DomainError naming (n, m) when the count exceeds kMaxTuples or when
/// distinct tuples are requested with m > n.
void require_enumerable(std::size_t n, std::size_t m, bool distinct);

/// Lexicographic enumeration.
std::vector<IndexTuple> enumerate_tuples(std::size_t n, std::size_t m, bool distinct);
void for_each_tuple(std::size_t n, std::size_t m, bool distinct,
                    const std::function<void(const IndexTuple&)>& visit);

/// Both means for several norms at once, from one pass over the tuple tree.
/// Products accumulate left to right with the prefix shared per branch; sums
/// are compensated in extended precision.
struct NormMeans {
  std::vector<double> wr;   // one per spec; empty when not requested
  std::vector<double> wor;  // one per spec; empty when not requested
};
NormMeans norm_means(const MatrixFamily& f, std::size_t m, const std::vector<NormSpec>& specs,
                     bool with_replacement = true, bool without_replacement = true);

/// (1/n^m) Σ_{all tuples} |||A_{j1}⋯A_{jm}|||
double wr_mean(const MatrixFamily& f, std::size_t m, const NormSpec& spec);
/// ((n-m)!/n!) Σ_{distinct tuples} |||A_{j1}⋯A_{jm}|||
double wor_mean(const MatrixFamily& f, std::size_t m, const NormSpec& spec);

/// lhs = wr_mean, rhs = wor_mean. Params record m, n, d, norm and
/// case=proved (m <= 3) or case=open. A failing report also gets
/// flag=implementation_error (proved case) or flag=candidate_counterexample.
GapReport amgm_gap(const MatrixFamily& f, std::size_t m, const NormSpec& spec,
                   double epsilon = kDefaultEpsilon);
std::vector<GapReport> amgm_gaps(const MatrixFamily& f, std::size_t m,
                                 const std::vector<NormSpec>& specs,
                                 double epsilon = kDefaultEpsilon);

/// The m = 3 inequality in averaged form and in the rearranged form
///   (n-1)(n-2)·S_repeat >= (3n-2)·S_distinct,
/// where S_repeat sums over tuples with a repeated index. The second gap equals
/// the first times n³(n-1)(n-2) (param factor). Both reports carry
/// consistency_deviation, the relative mismatch of that identity.
std::pair<GapReport, GapReport> equiv_form_check(const MatrixFamily& f, const NormSpec& spec,
                                                 double epsilon = kDefaultEpsilon);

/// Operator norm of the averaged products, norm outside the sums:
/// lhs over all tuples, rhs over distinct tuples. Param status=asserted for
/// m <= 2, status=conjecture otherwise.
GapReport recht_gap(const MatrixFamily& f, std::size_t m, double epsilon = kDefaultEpsilon);

/// Scalar case: lhs = (mean x)^m, the average of products over all m-tuples;
/// rhs = e_m(x)/C(n,m), the average over m-subsets. Requires x_i > 0 and
/// 1 <= m <= n.
GapReport maclaurin_gap(const std::vector<double>& xs, std::size_t m,
                        double epsilon = kDefaultEpsilon);

/// Elementary symmetric polynomial e_m(x).
double elementary_symmetric(const std::vector<double>& xs, std::size_t m);

/// Monte Carlo estimate of wr_mean from i.i.d. uniform index draws.
struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t draws = 0;
};
MonteCarloEstimate wr_mean_monte_carlo(const MatrixFamily& f, std::size_t m,
                                       const NormSpec& spec, std::size_t draws, Rng& rng);

/// Family in the matrix text format followed by the report JSON on its own line.
std::string candidate_dump(const MatrixFamily& f, const GapReport& report);

}  // namespace amgm
