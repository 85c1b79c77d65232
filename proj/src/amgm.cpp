#include "amgm/amgm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "amgm/linalg.hpp"
#include "amgm/matrix_io.hpp"
#include "amgm/summation.hpp"

namespace amgm {

MatrixFamily::MatrixFamily(std::vector<Matrix> members) : members_(std::move(members)) {
  if (members_.empty()) throw DomainError("MatrixFamily: no members");
  const std::size_t d = members_.front().dim();
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i].dim() != d) throw DomainError("MatrixFamily: members differ in dimension");
    require_psd(members_[i], ("MatrixFamily member " + std::to_string(i + 1)).c_str());
  }
}

MatrixFamily MatrixFamily::scaled(double c) const {
  std::vector<Matrix> out;
  out.reserve(n());
  for (const auto& a : members_) out.push_back(c * a);
  return MatrixFamily(std::move(out));
}

MatrixFamily MatrixFamily::permuted(const std::vector<std::size_t>& order) const {
  if (order.size() != n()) throw DomainError("MatrixFamily::permuted: wrong length");
  std::vector<Matrix> out;
  out.reserve(n());
  for (std::size_t i : order) out.push_back(members_.at(i));
  return MatrixFamily(std::move(out));
}

MatrixFamily MatrixFamily::with_member(std::size_t i, Matrix replacement) const {
  std::vector<Matrix> out = members_;
  out.at(i) = std::move(replacement);
  return MatrixFamily(std::move(out));
}

std::uint64_t tuple_count(std::size_t n, std::size_t m, bool distinct) {
  if (distinct && m > n) return 0;
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < m; ++i) {
    const std::uint64_t factor = distinct ? n - i : n;
    if (factor != 0 && count > std::numeric_limits<std::uint64_t>::max() / factor) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    count *= factor;
  }
  return count;
}

void require_enumerable(std::size_t n, std::size_t m, bool distinct) {
  const std::string where = " (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")";
  if (n < 1 || m < 1) throw DomainError("tuple enumeration needs n >= 1 and m >= 1" + where);
  if (distinct && m > n) {
    throw DomainError("distinct tuples need m <= n" + where);
  }
  if (tuple_count(n, m, distinct) > kMaxTuples) {
    throw DomainError("tuple count exceeds " + std::to_string(kMaxTuples) + where);
  }
}

void for_each_tuple(std::size_t n, std::size_t m, bool distinct,
                    const std::function<void(const IndexTuple&)>& visit) {
  require_enumerable(n, m, distinct);
  IndexTuple t(m, 0);
  std::vector<int> used(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == m) {
      visit(t);
      return;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (distinct && used[j]) continue;
      t[depth] = j;
      ++used[j];
      rec(depth + 1);
      --used[j];
    }
  };
  rec(0);
}

std::vector<IndexTuple> enumerate_tuples(std::size_t n, std::size_t m, bool distinct) {
  std::vector<IndexTuple> out;
  require_enumerable(n, m, distinct);
  out.reserve(tuple_count(n, m, distinct));
  for_each_tuple(n, m, distinct, [&](const IndexTuple& t) { out.push_back(t); });
  return out;
}

namespace {

/// Depth-first walk over the tuple tree with cached prefix products. `leaf`
/// receives the full product and whether the tuple has pairwise distinct entries.
template <typename Leaf>
void walk_products(const MatrixFamily& f, std::size_t m, bool all_tuples, Leaf&& leaf) {
  const std::size_t n = f.n();
  std::vector<Matrix> prefix(m);
  std::vector<int> used(n, 0);
  std::size_t repeats = 0;
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    for (std::size_t j = 0; j < n; ++j) {
      if (!all_tuples && used[j]) continue;
      prefix[depth] = depth == 0 ? f[j] : prefix[depth - 1] * f[j];
      if (used[j]) ++repeats;
      ++used[j];
      if (depth + 1 == m) {
        leaf(prefix[depth], repeats == 0);
      } else {
        self(self, depth + 1);
      }
      --used[j];
      if (used[j]) --repeats;
    }
  };
  rec(rec, 0);
}

void require_family(const MatrixFamily& f) {
  if (f.n() == 0) throw DomainError("empty matrix family");
}

}  // namespace

NormMeans norm_means(const MatrixFamily& f, std::size_t m, const std::vector<NormSpec>& specs,
                     bool with_replacement, bool without_replacement) {
  require_family(f);
  if (with_replacement) require_enumerable(f.n(), m, false);
  if (without_replacement) require_enumerable(f.n(), m, true);
  NormMeans out;
  if (!with_replacement && !without_replacement) return out;

  std::vector<CompensatedSum> wr(specs.size());
  std::vector<CompensatedSum> wor(specs.size());
  walk_products(f, m, with_replacement, [&](const Matrix& product, bool distinct) {
    const Spectrum sv = singular_values(product);
    for (std::size_t s = 0; s < specs.size(); ++s) {
      const double v = gauge_eval(specs[s], sv);
      if (with_replacement) wr[s].add(v);
      if (distinct && without_replacement) wor[s].add(v);
    }
  });
  if (with_replacement) {
    const long double count = static_cast<long double>(tuple_count(f.n(), m, false));
    for (const auto& acc : wr) out.wr.push_back(static_cast<double>(acc.value() / count));
  }
  if (without_replacement) {
    const long double count = static_cast<long double>(tuple_count(f.n(), m, true));
    for (const auto& acc : wor) out.wor.push_back(static_cast<double>(acc.value() / count));
  }
  return out;
}

double wr_mean(const MatrixFamily& f, std::size_t m, const NormSpec& spec) {
  return norm_means(f, m, {spec}, true, false).wr.front();
}

double wor_mean(const MatrixFamily& f, std::size_t m, const NormSpec& spec) {
  return norm_means(f, m, {spec}, false, true).wor.front();
}

namespace {

GapReport finish_amgm_report(const MatrixFamily& f, std::size_t m, const NormSpec& spec,
                             double wr, double wor, double epsilon) {
  auto rep = make_gap("amgm_gap", wr, wor, epsilon);
  rep.param("m", std::to_string(m))
      .param("n", std::to_string(f.n()))
      .param("d", std::to_string(f.d()))
      .param("norm", to_string(spec))
      .param("case", m <= 3 ? "proved" : "open");
  if (!rep.pass) rep.param("flag", m <= 3 ? "implementation_error" : "candidate_counterexample");
  return rep;
}

}  // namespace

std::vector<GapReport> amgm_gaps(const MatrixFamily& f, std::size_t m,
                                 const std::vector<NormSpec>& specs, double epsilon) {
  const auto means = norm_means(f, m, specs);
  std::vector<GapReport> out;
  out.reserve(specs.size());
  for (std::size_t s = 0; s < specs.size(); ++s) {
    out.push_back(finish_amgm_report(f, m, specs[s], means.wr[s], means.wor[s], epsilon));
  }
  return out;
}

GapReport amgm_gap(const MatrixFamily& f, std::size_t m, const NormSpec& spec, double epsilon) {
  return amgm_gaps(f, m, {spec}, epsilon).front();
}

std::pair<GapReport, GapReport> equiv_form_check(const MatrixFamily& f, const NormSpec& spec,
                                                 double epsilon) {
  require_family(f);
  const std::size_t n = f.n();
  if (n < 3) throw DomainError("equiv_form_check needs n >= 3");
  require_enumerable(n, 3, false);
  CompensatedSum all_sum;
  CompensatedSum distinct_sum;
  walk_products(f, 3, true, [&](const Matrix& product, bool distinct) {
    const double v = ui_norm(spec, product);
    all_sum.add(v);
    if (distinct) distinct_sum.add(v);
  });
  const long double nl = static_cast<long double>(n);
  const long double s_all = all_sum.value();
  const long double s_distinct = distinct_sum.value();
  const long double s_repeat = s_all - s_distinct;

  auto main = make_gap("equiv_form_main", static_cast<double>(s_all / (nl * nl * nl)),
                       static_cast<double>(s_distinct / (nl * (nl - 1) * (nl - 2))), epsilon);
  auto rearranged = make_gap("equiv_form_rearranged",
                             static_cast<double>((nl - 1) * (nl - 2) * s_repeat),
                             static_cast<double>((3 * nl - 2) * s_distinct), epsilon);

  const double factor = static_cast<double>(nl * nl * nl * (nl - 1) * (nl - 2));
  const double scale =
      std::max({1.0, std::abs(rearranged.lhs), std::abs(rearranged.rhs)});
  const double deviation = std::abs(rearranged.gap - factor * main.gap) / scale;
  for (GapReport* rep : {&main, &rearranged}) {
    rep->param("n", std::to_string(n))
        .param("norm", to_string(spec))
        .param("factor", factor)
        .param("consistency_deviation", deviation);
  }
  return {main, rearranged};
}

GapReport recht_gap(const MatrixFamily& f, std::size_t m, double epsilon) {
  require_family(f);
  require_enumerable(f.n(), m, false);
  require_enumerable(f.n(), m, true);
  const std::size_t d = f.d();
  std::vector<CompensatedSum> all(d * d);
  std::vector<CompensatedSum> distinct(d * d);
  walk_products(f, m, true, [&](const Matrix& product, bool is_distinct) {
    const auto data = product.data();
    for (std::size_t i = 0; i < d * d; ++i) {
      all[i].add(data[i]);
      if (is_distinct) distinct[i].add(data[i]);
    }
  });
  const long double n_all = static_cast<long double>(tuple_count(f.n(), m, false));
  const long double n_distinct = static_cast<long double>(tuple_count(f.n(), m, true));
  std::vector<double> mean_all(d * d);
  std::vector<double> mean_distinct(d * d);
  for (std::size_t i = 0; i < d * d; ++i) {
    mean_all[i] = static_cast<double>(all[i].value() / n_all);
    mean_distinct[i] = static_cast<double>(distinct[i].value() / n_distinct);
  }
  const double lhs = ui_norm(NormSpec::op(), Matrix(d, std::move(mean_all)));
  const double rhs = ui_norm(NormSpec::op(), Matrix(d, std::move(mean_distinct)));
  auto rep = make_gap("recht_gap", lhs, rhs, epsilon);
  rep.param("m", std::to_string(m))
      .param("n", std::to_string(f.n()))
      .param("d", std::to_string(d))
      .param("status", m <= 2 ? "asserted" : "conjecture");
  return rep;
}

double elementary_symmetric(const std::vector<double>& xs, std::size_t m) {
  // e[j] after processing a prefix of xs; standard O(nm) recurrence.
  std::vector<long double> e(m + 1, 0.0L);
  e[0] = 1.0L;
  for (double x : xs) {
    for (std::size_t j = std::min(m, xs.size()); j >= 1; --j) e[j] += e[j - 1] * x;
  }
  return static_cast<double>(e[m]);
}

GapReport maclaurin_gap(const std::vector<double>& xs, std::size_t m, double epsilon) {
  const std::size_t n = xs.size();
  if (n == 0 || m < 1 || m > n) throw DomainError("maclaurin_gap needs 1 <= m <= n");
  for (double x : xs) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("maclaurin_gap needs positive inputs");
  }
  CompensatedSum total;
  for (double x : xs) total.add(x);
  const long double mean = total.value() / static_cast<long double>(n);
  long double power = 1.0L;
  for (std::size_t i = 0; i < m; ++i) power *= mean;

  long double subsets = 1.0L;  // C(n, m)
  for (std::size_t i = 1; i <= m; ++i) subsets = subsets * static_cast<long double>(n - m + i) / i;
  const double rhs = static_cast<double>(elementary_symmetric(xs, m) / subsets);

  auto rep = make_gap("maclaurin_gap", static_cast<double>(power), rhs, epsilon);
  rep.param("m", std::to_string(m)).param("n", std::to_string(n));
  return rep;
}

MonteCarloEstimate wr_mean_monte_carlo(const MatrixFamily& f, std::size_t m,
                                       const NormSpec& spec, std::size_t draws, Rng& rng) {
  require_family(f);
  if (m < 1) throw DomainError("wr_mean_monte_carlo needs m >= 1");
  if (draws < 2) throw DomainError("wr_mean_monte_carlo needs at least two draws");
  CompensatedSum sum;
  CompensatedSum sum_sq;
  for (std::size_t t = 0; t < draws; ++t) {
    Matrix product = f[rng.index(f.n())];
    for (std::size_t i = 1; i < m; ++i) product = product * f[rng.index(f.n())];
    const long double v = ui_norm(spec, product);
    sum.add(v);
    sum_sq.add(v * v);
  }
  const long double count = static_cast<long double>(draws);
  const long double mean = sum.value() / count;
  const long double var = std::max(0.0L, (sum_sq.value() - count * mean * mean) / (count - 1));
  return {static_cast<double>(mean), static_cast<double>(std::sqrt(var / count)), draws};
}

std::string candidate_dump(const MatrixFamily& f, const GapReport& report) {
  std::ostringstream os;
  write_family(os, f.members());
  os << to_json(report) << '\n';
  return os.str();
}

}  // namespace amgm
