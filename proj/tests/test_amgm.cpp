#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "amgm/amgm.hpp"
#include "amgm/inequalities.hpp"
#include "amgm/linalg.hpp"
#include "amgm/matrix_io.hpp"
#include "amgm/sweeps.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace amgm;

namespace {

std::string param_of(const GapReport& r, const std::string& key) {
  for (const auto& [k, v] : r.params)
    if (k == key) return v;
  return {};
}

MatrixFamily scalars(const std::vector<double>& xs) {
  std::vector<Matrix> members;
  for (double x : xs) members.push_back(Matrix{{x}});
  return MatrixFamily(members);
}

}  // namespace

TEST(Family, Validation) {
  EXPECT_THROW(MatrixFamily(std::vector<Matrix>{}), DomainError);
  EXPECT_THROW(MatrixFamily({Matrix::identity(2), Matrix::identity(3)}), DomainError);
  EXPECT_THROW(MatrixFamily({Matrix{{1, 0}, {0, -1}}}), DomainError);
  const MatrixFamily f({Matrix::identity(2), 2.0 * Matrix::identity(2)});
  EXPECT_EQ(f.n(), 2u);
  EXPECT_EQ(f.d(), 2u);
}

TEST(Enumeration, HandExamples) {
  EXPECT_EQ(enumerate_tuples(2, 2, false),
            (std::vector<IndexTuple>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  EXPECT_EQ(enumerate_tuples(3, 2, true).size(), 6u);
  EXPECT_EQ(enumerate_tuples(5, 3, true).size(), 60u);
  EXPECT_EQ(tuple_count(5, 3, false), 125u);
  EXPECT_EQ(tuple_count(5, 3, true), 60u);
}

TEST(Enumeration, MatchesOdometerOracle) {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (std::size_t m = 1; m <= 4; ++m) {
      for (bool distinct : {false, true}) {
        if (distinct && m > n) continue;
        std::vector<IndexTuple> want;
        oracle::tuples(n, m, distinct, [&](const std::vector<std::size_t>& t) { want.push_back(t); });
        const auto got = enumerate_tuples(n, m, distinct);
        EXPECT_EQ(got, want);
        EXPECT_EQ(std::set<IndexTuple>(got.begin(), got.end()).size(), got.size());
        EXPECT_EQ(tuple_count(n, m, distinct), got.size());
      }
    }
  }
}

TEST(Enumeration, Guards) {
  EXPECT_THROW(require_enumerable(3, 5, true), DomainError);
  EXPECT_NO_THROW(require_enumerable(3, 5, false));
  EXPECT_THROW(require_enumerable(100, 4, false), DomainError);  // 10^8 > 10^7
  EXPECT_NO_THROW(require_enumerable(56, 4, false));
  try {
    require_enumerable(3, 5, true);
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("n=3, m=5"), std::string::npos);
  }
  EXPECT_EQ(tuple_count(1000, 10, false), UINT64_MAX);
}

TEST(Means, HandExample) {
  const MatrixFamily f({Matrix{{1, 0}, {0, 0}}, Matrix{{0, 0}, {0, 1}}});
  EXPECT_DOUBLE_EQ(wr_mean(f, 2, NormSpec::op()), 0.5);
  EXPECT_DOUBLE_EQ(wor_mean(f, 2, NormSpec::op()), 0.0);
  const auto rep = amgm_gap(f, 2, NormSpec::op());
  EXPECT_DOUBLE_EQ(rep.gap, 0.5);
  EXPECT_EQ(param_of(rep, "case"), "proved");
}

TEST(Means, SingleIndexAndEqualMembers) {
  Rng rng(61);
  const MatrixFamily f = sweep_family(rng, 4, 3);
  for (const auto& spec : default_norm_catalog()) {
    double direct = 0.0;
    for (const auto& a : f.members()) direct += ui_norm(spec, a);
    direct /= 4.0;
    EXPECT_NEAR(wr_mean(f, 1, spec), direct, 1e-14 * std::max(1.0, direct));
    EXPECT_EQ(amgm_gap(f, 1, spec).gap, 0.0);
  }
  const Matrix a = random_psd(rng, 3, Wishart{4});
  const MatrixFamily same({a, a, a, a});
  for (std::size_t m = 1; m <= 4; ++m) {
    for (const auto& spec : default_norm_catalog()) {
      const auto rep = amgm_gap(same, m, spec);
      EXPECT_NEAR(rep.rel_gap, 0.0, 1e-14);
      Matrix p = a;
      for (std::size_t i = 1; i < m; ++i) p = p * a;
      EXPECT_NEAR(rep.lhs, ui_norm(spec, p), 1e-12 * std::max(1.0, rep.lhs));
    }
  }
}

TEST(Means, MatchBruteForceOracle) {
  Rng rng(62);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + rng.index(3);
    const std::size_t d = 1 + rng.index(4);
    const std::size_t m = 1 + rng.index(std::min<std::size_t>(n, 4));
    const MatrixFamily f = sweep_family(rng, n, d);
    for (const auto& spec : catalog_for_dim(default_norm_catalog(), d)) {
      const auto norm = [&](const Matrix& x) { return ui_norm(spec, x); };
      const double wr = oracle::tuple_mean(f.members(), m, false, norm);
      const double wor = oracle::tuple_mean(f.members(), m, true, norm);
      EXPECT_NEAR(wr_mean(f, m, spec), wr, 1e-10 * std::max(1.0, wr));
      EXPECT_NEAR(wor_mean(f, m, spec), wor, 1e-10 * std::max(1.0, wor));
    }
  }
}

TEST(Means, MultiNormPassMatchesSingleNorm) {
  Rng rng(63);
  const MatrixFamily f = sweep_family(rng, 4, 3);
  const auto specs = default_norm_catalog();
  const auto both = norm_means(f, 3, specs);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    EXPECT_EQ(both.wr[i], wr_mean(f, 3, specs[i]));
    EXPECT_EQ(both.wor[i], wor_mean(f, 3, specs[i]));
  }
  EXPECT_TRUE(norm_means(f, 3, specs, true, false).wor.empty());
}

TEST(AmgmGap, ProvedCasesAndFlags) {
  Rng rng(64);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 3 + rng.index(3);
    const std::size_t d = 2 + rng.index(4);
    const MatrixFamily f = sweep_family(rng, n, d);
    for (std::size_t m = 1; m <= 3; ++m) {
      for (const auto& rep : amgm_gaps(f, m, catalog_for_dim(default_norm_catalog(), d))) {
        EXPECT_TRUE(rep.pass) << rep.rel_gap;
        EXPECT_EQ(param_of(rep, "flag"), "");
      }
    }
  }
  const MatrixFamily f = sweep_family(rng, 4, 2);
  auto open = amgm_gap(f, 4, NormSpec::op(), 10.0 /* forces nothing */);
  EXPECT_EQ(param_of(open, "case"), "open");
  EXPECT_THROW(amgm_gap(f, 5, NormSpec::op()), DomainError);
}

TEST(AmgmGap, HomogeneityAndPermutationInvariance) {
  Rng rng(65);
  for (int t = 0; t < 20; ++t) {
    const MatrixFamily f = sweep_family(rng, 4, 3);
    const std::size_t m = 1 + rng.index(4);
    for (const auto& spec : default_norm_catalog()) {
      const auto base = amgm_gap(f, m, spec);
      for (double c : {1e-3, 1.0, 1e3}) {
        const auto scaled = amgm_gap(f.scaled(c), m, spec);
        const double cm = std::pow(c, static_cast<double>(m));
        EXPECT_NEAR(scaled.lhs / cm, base.lhs, 1e-10 * std::max(1.0, base.lhs));
        EXPECT_NEAR(scaled.rhs / cm, base.rhs, 1e-10 * std::max(1.0, base.rhs));
        EXPECT_EQ(scaled.pass, base.pass);
      }
      const auto perm = amgm_gap(f.permuted({2, 0, 3, 1}), m, spec);
      EXPECT_NEAR(perm.lhs, base.lhs, 1e-13 * std::max(1.0, base.lhs));
      EXPECT_NEAR(perm.rhs, base.rhs, 1e-13 * std::max(1.0, base.rhs));
    }
  }
}

TEST(Maclaurin, HandExamples) {
  const auto r = maclaurin_gap({1, 2}, 2);
  EXPECT_DOUBLE_EQ(r.lhs, 9.0 / 4.0);
  EXPECT_DOUBLE_EQ(r.rhs, 2.0);
  EXPECT_DOUBLE_EQ(r.gap, 0.25);
  EXPECT_NEAR(maclaurin_gap({3, 3, 3, 3}, 3).gap, 0.0, 1e-13);
  EXPECT_THROW(maclaurin_gap({1, 0}, 1), DomainError);
  EXPECT_THROW(maclaurin_gap({1, 2}, 3), DomainError);
}

TEST(Maclaurin, ElementarySymmetricOracle) {
  Rng rng(66);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> xs(1 + rng.index(8));
    for (double& x : xs) x = rng.uniform(0.1, 3.0);
    for (std::size_t m = 0; m <= xs.size(); ++m) {
      const double want = m == 0 ? 1.0 : oracle::elementary_symmetric(xs, m);
      EXPECT_NEAR(elementary_symmetric(xs, m), want, 1e-12 * std::max(1.0, want));
    }
  }
}

TEST(Maclaurin, ScalarReduction) {
  Rng rng(67);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> xs(1 + rng.index(8));
    for (double& x : xs) x = rng.uniform(0.1, 3.0);
    const std::size_t m = 1 + rng.index(std::min<std::size_t>(xs.size(), 4));
    const auto mac = maclaurin_gap(xs, m);
    const MatrixFamily f = scalars(xs);
    for (const auto& spec : catalog_for_dim(default_norm_catalog(), 1)) {
      EXPECT_NEAR(wr_mean(f, m, spec), mac.lhs, 1e-12 * std::max(1.0, mac.lhs));
      EXPECT_NEAR(wor_mean(f, m, spec), mac.rhs, 1e-12 * std::max(1.0, mac.rhs));
    }
    EXPECT_TRUE(mac.pass);
  }
}

TEST(EquivForm, SignsAgreeAndFactorHolds) {
  Rng rng(68);
  const Matrix a = random_psd(rng, 2, Wishart{3});
  const auto [eq_main, eq_re] = equiv_form_check(MatrixFamily({a, a, a}), NormSpec::op());
  EXPECT_NEAR(eq_main.rel_gap, 0.0, 1e-13);
  EXPECT_NEAR(eq_re.rel_gap, 0.0, 1e-12);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 3 + rng.index(3);
    const MatrixFamily f = sweep_family(rng, n, 1 + rng.index(4));
    const auto [main, re] = equiv_form_check(f, NormSpec::trace());
    EXPECT_TRUE(main.pass);
    EXPECT_TRUE(re.pass);
    const double factor = std::stod(param_of(main, "factor"));
    const double nn = static_cast<double>(n);
    EXPECT_EQ(factor, nn * nn * nn * (nn - 1) * (nn - 2));
    EXPECT_LE(std::stod(param_of(main, "consistency_deviation")), 1e-10);
  }
  EXPECT_THROW(equiv_form_check(sweep_family(rng, 2, 2), NormSpec::op()), DomainError);
}

TEST(EquivForm, ScalarCase) {
  const std::vector<double> xs{0.5, 1.0, 2.0, 4.0};
  const auto [main, re] = equiv_form_check(scalars(xs), NormSpec::op());
  const auto mac = maclaurin_gap(xs, 3);
  EXPECT_NEAR(main.lhs, mac.lhs, 1e-13);
  EXPECT_NEAR(main.rhs, mac.rhs, 1e-13);
  EXPECT_GT(re.gap, 0.0);
}

TEST(Recht, HandExamples) {
  Rng rng(69);
  const MatrixFamily f = sweep_family(rng, 4, 3);
  const auto one = recht_gap(f, 1);
  EXPECT_NEAR(one.gap, 0.0, 1e-13);
  EXPECT_EQ(param_of(one, "status"), "asserted");
  EXPECT_EQ(param_of(recht_gap(f, 3), "status"), "conjecture");
  // n = m = 2: lhs = ‖((A+B)/2)²‖, rhs = ‖(AB+BA)/2‖
  const Matrix a{{2, 1}, {1, 1}};
  const Matrix b{{1, 0}, {0, 3}};
  const auto two = recht_gap(MatrixFamily({a, b}), 2);
  const Matrix mean = 0.5 * (a + b);
  EXPECT_NEAR(two.lhs, ui_norm(NormSpec::op(), mean * mean), 1e-13);
  EXPECT_NEAR(two.rhs, ui_norm(NormSpec::op(), 0.5 * (a * b + b * a)), 1e-13);
  EXPECT_TRUE(two.pass);
  EXPECT_GE(psd_order_check(a, b), 0.0);
}

TEST(Recht, PairsAgreeWithPsdOrder) {
  Rng rng(70);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 1 + rng.index(5);
    const Matrix a = sweep_psd(rng, d);
    const Matrix b = sweep_psd(rng, d);
    EXPECT_TRUE(recht_gap(MatrixFamily({a, b}), 2).pass);
    EXPECT_GE(psd_order_check(a, b), -1e-8);
  }
}

TEST(MonteCarlo, WithinFourStandardErrors) {
  Rng rng(71);
  const MatrixFamily f = sweep_family(rng, 4, 3);
  Rng draws(72);
  const auto est = wr_mean_monte_carlo(f, 3, NormSpec::frobenius(), 100000, draws);
  EXPECT_EQ(est.draws, 100000u);
  EXPECT_GT(est.std_error, 0.0);
  EXPECT_LE(std::abs(est.mean - wr_mean(f, 3, NormSpec::frobenius())), 4 * est.std_error);
}

TEST(CandidateDump, FamilyThenReport) {
  Rng rng(73);
  const MatrixFamily f = sweep_family(rng, 3, 2);
  const auto rep = amgm_gap(f, 2, NormSpec::op());
  const std::string dump = candidate_dump(f, rep);
  std::istringstream in(dump);
  const auto members = read_family(in);
  ASSERT_EQ(members.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(members[i], f[i]);
  std::string line;
  while (line.empty() && std::getline(in, line)) {}
  const auto j = nlohmann::json::parse(line);
  EXPECT_EQ(j["check"], "amgm_gap");
  EXPECT_EQ(j["lhs"].get<double>(), rep.lhs);
}
