#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "amgm/linalg.hpp"
#include "amgm/matrix_io.hpp"
#include "amgm/random.hpp"
#include "oracles.hpp"

using namespace amgm;

namespace {

double orthogonality_error(const Matrix& q) {
  return max_abs_diff(q.transpose() * q, Matrix::identity(q.dim()));
}

Matrix reconstruct(const EigenDecomposition& e) {
  return spectral_map(e, [](double x) { return x; });
}

}  // namespace

TEST(Matrix, RejectsNonFiniteEntries) {
  EXPECT_THROW(Matrix(2, {1.0, NAN, 0.0, 1.0}), DomainError);
  EXPECT_THROW(Matrix(2, {1.0, INFINITY, 0.0, 1.0}), DomainError);
  EXPECT_THROW(Matrix(2, {1.0, 2.0, 3.0}), DomainError);
}

TEST(Matrix, ProductMatchesHandComputation) {
  const Matrix a{{1, 2}, {3, 4}};
  const Matrix b{{0, 1}, {1, 0}};
  EXPECT_EQ(a * b, (Matrix{{2, 1}, {4, 3}}));
  EXPECT_DOUBLE_EQ(a.trace(), 5.0);
}

TEST(SymEigen, DiagonalInput) {
  const auto e = sym_eigen(Matrix{{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  EXPECT_EQ(e.values.values, (std::vector<double>{3, 2, 1}));
  for (std::size_t j = 0; j < 3; ++j) {
    double mass = 0.0;
    for (std::size_t i = 0; i < 3; ++i) mass += std::abs(e.vectors(i, j));
    EXPECT_DOUBLE_EQ(mass, 1.0);
  }
}

TEST(SymEigen, SwapMatrix) {
  const auto e = sym_eigen(Matrix{{0, 1}, {1, 0}});
  EXPECT_NEAR(e.values[0], 1.0, 1e-14);
  EXPECT_NEAR(e.values[1], -1.0, 1e-14);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(e.vectors(0, 0), h, 1e-14);
  EXPECT_NEAR(e.vectors(1, 0), h, 1e-14);
  EXPECT_NEAR(std::abs(e.vectors(0, 1)), h, 1e-14);
  EXPECT_NEAR(e.vectors(0, 1), -e.vectors(1, 1), 1e-14);
}

TEST(SymEigen, CharacteristicPolynomialRoots) {
  // λ² − 4λ + 3
  const auto e = sym_eigen(Matrix{{2, 1}, {1, 2}});
  EXPECT_NEAR(e.values[0], 3.0, 1e-14);
  EXPECT_NEAR(e.values[1], 1.0, 1e-14);
}

TEST(SymEigen, RejectsAsymmetricAndNonSquareData) {
  EXPECT_THROW(sym_eigen(Matrix{{1, 2}, {0, 1}}), DomainError);
}

TEST(SymEigen, ReconstructionProperty) {
  Rng rng(101);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t d = 1 + rng.index(8);
    const Matrix s = random_symmetric(rng, d);
    const auto e = sym_eigen(s);
    ASSERT_TRUE(e.values.is_sorted());
    EXPECT_LE(orthogonality_error(e.vectors), 10 * kEigenTol);
    EXPECT_LE(max_abs_diff(reconstruct(e), s), 10 * kEigenTol * std::max(1.0, s.max_abs()));
  }
}

TEST(SymEigen, DeterminantMatchesLeibnizProduct) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const std::size_t d = 1 + rng.index(5);
    const Matrix s = random_symmetric(rng, d);
    const auto e = sym_eigen(s);
    double prod = 1.0;
    for (double v : e.values.values) prod *= v;
    EXPECT_NEAR(prod, oracle::leibniz_det(s), 1e-10 * std::max(1.0, std::abs(prod)));
  }
}

TEST(SingularValues, HandExamples) {
  EXPECT_EQ(singular_values(Matrix::identity(3)).values, (std::vector<double>{1, 1, 1}));
  const auto nil = singular_values(Matrix{{0, 2}, {0, 0}});
  EXPECT_NEAR(nil[0], 2.0, 1e-15);
  EXPECT_NEAR(nil[1], 0.0, 1e-15);
  const auto shear = singular_values(Matrix{{1, 1}, {0, 1}});
  EXPECT_NEAR(shear[0], (1 + std::sqrt(5.0)) / 2, 1e-14);
  EXPECT_NEAR(shear[1], (std::sqrt(5.0) - 1) / 2, 1e-14);
}

TEST(SingularValues, AgreeWithClosedForm2x2) {
  Rng rng(8);
  for (int t = 0; t < 500; ++t) {
    const Matrix x = random_gaussian(rng, 2);
    const auto [hi, lo] = oracle::singular_values_2x2(x);
    const auto sv = singular_values(x);
    EXPECT_NEAR(sv[0], hi, 1e-12 * std::max(1.0, hi));
    EXPECT_NEAR(sv[1], lo, 1e-12 * std::max(1.0, hi));
  }
}

TEST(SingularValues, OrthogonalInvariance) {
  Rng rng(9);
  for (int t = 0; t < 300; ++t) {
    const std::size_t d = 1 + rng.index(6);
    const Matrix x = random_gaussian(rng, d);
    const Matrix q = random_orthogonal(rng, d);
    const auto s = singular_values(x);
    const auto left = singular_values(q * x);
    const auto right = singular_values(x * q);
    for (std::size_t i = 0; i < d; ++i) {
      EXPECT_NEAR(left[i], s[i], 1e-8);
      EXPECT_NEAR(right[i], s[i], 1e-8);
    }
  }
}

TEST(SingularValues, RankDeficientInputConverges) {
  Rng rng(10);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 2 + rng.index(5);
    const Matrix p = random_psd(rng, d, Projector{static_cast<int>(rng.index(d))});
    const auto sv = singular_values(p * random_gaussian(rng, d));
    EXPECT_TRUE(sv.is_sorted());
    EXPECT_GE(sv[d - 1], 0.0);
  }
}

TEST(MatrixAbs, HandExamples) {
  EXPECT_LE(max_abs_diff(matrix_abs(Matrix{{0, 2}, {0, 0}}), Matrix{{0, 0}, {0, 2}}), 1e-14);
  EXPECT_LE(max_abs_diff(matrix_abs(-1.0 * Matrix::identity(2)), Matrix::identity(2)), 1e-14);
  const Matrix a{{2, 1}, {1, 2}};
  EXPECT_LE(max_abs_diff(matrix_abs(a), a), 1e-13);
}

TEST(MatrixAbs, SymmetricPsdWithSingularSpectrum) {
  Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const std::size_t d = 1 + rng.index(6);
    const Matrix x = random_gaussian(rng, d);
    const Matrix ax = matrix_abs(x);
    EXPECT_EQ(ax.asymmetry(), 0.0);
    EXPECT_TRUE(is_psd(ax));
    const auto ev = sym_eigen(ax).values;
    const auto sv = singular_values(x);
    for (std::size_t i = 0; i < d; ++i) EXPECT_NEAR(ev[i], sv[i], 1e-8);
  }
}

TEST(PsdPower, HandExamples) {
  EXPECT_LE(max_abs_diff(psd_power(Matrix{{4, 0}, {0, 9}}, 0.5), Matrix{{2, 0}, {0, 3}}), 1e-14);
  const Matrix a{{2, 1}, {1, 2}};
  EXPECT_LE(max_abs_diff(psd_power(a, 2.0), a * a), 1e-13);
  EXPECT_EQ(psd_power(a, 1.0), a);
}

TEST(PsdPower, Errors) {
  EXPECT_THROW(psd_power(Matrix{{1, 0}, {0, -1}}, 0.5), DomainError);
  EXPECT_THROW(psd_power(Matrix::identity(2), 0.0), DomainError);
  EXPECT_THROW(psd_power(Matrix::identity(2), -1.0), DomainError);
}

TEST(PsdPower, TinyNegativeEigenvalueIsClamped) {
  const Matrix a{{1, 0}, {0, -1e-14}};
  const Matrix r = psd_power(a, 0.5);
  EXPECT_EQ(r(1, 1), 0.0);
  EXPECT_DOUBLE_EQ(r(0, 0), 1.0);
}

TEST(PsdPower, Composition) {
  Rng rng(12);
  for (int t = 0; t < 300; ++t) {
    const std::size_t d = 1 + rng.index(5);
    const Matrix a = random_psd(rng, d, RotatedDiagonal{10.0});
    const double x = rng.uniform(0.05, 3.0);
    const double y = rng.uniform(0.05, 3.0);
    const Matrix lhs = psd_power(psd_power(a, x), y);
    const Matrix rhs = psd_power(a, x * y);
    EXPECT_LE(max_abs_diff(lhs, rhs), 1e-8 * std::max(1.0, rhs.max_abs()));
  }
}

TEST(RandomPsd, ProjectorProperties) {
  Rng rng(13);
  for (std::size_t d = 1; d <= 6; ++d) {
    EXPECT_LE(max_abs_diff(random_psd(rng, d, Projector{static_cast<int>(d)}),
                           Matrix::identity(d)),
              1e-12);
    for (int r = 0; r <= static_cast<int>(d); ++r) {
      const Matrix p = random_psd(rng, d, Projector{r});
      EXPECT_LE(max_abs_diff(p * p, p), 1e-12);
      EXPECT_NEAR(p.trace(), r, 1e-12);
    }
  }
}

TEST(RandomPsd, WishartDrawsArePsd) {
  Rng rng(14);
  for (int t = 0; t < 1000; ++t) {
    EXPECT_GE(min_eigenvalue(random_psd(rng, 3, Wishart{5})), -1e-10);
  }
}

TEST(RandomPsd, EveryKindIsPsd) {
  Rng rng(15);
  const std::vector<PsdKind> kinds{Wishart{1}, Wishart{4}, Projector{1}, Diagonal{},
                                   RotatedDiagonal{}, RotatedDiagonal{1e3}};
  for (int t = 0; t < 100; ++t) {
    for (const auto& kind : kinds) EXPECT_TRUE(is_psd(random_psd(rng, 4, kind)));
  }
}

TEST(RandomPsd, InvalidParameters) {
  Rng rng(1);
  EXPECT_THROW(random_psd(rng, 3, Wishart{0}), DomainError);
  EXPECT_THROW(random_psd(rng, 3, Projector{4}), DomainError);
  EXPECT_THROW(random_psd(rng, 3, Projector{-1}), DomainError);
}

TEST(RandomOrthogonal, Properties) {
  Rng rng(16);
  const Matrix one = random_orthogonal(rng, 1);
  EXPECT_EQ(std::abs(one(0, 0)), 1.0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 1 + rng.index(6);
    const Matrix q = random_orthogonal(rng, d);
    EXPECT_LE(orthogonality_error(q), 1e-10);
    EXPECT_NEAR(std::abs(oracle::leibniz_det(q)), 1.0, 1e-8);
  }
}

TEST(RandomOrthogonal, FixedSeedIsByteIdentical) {
  Rng a(42);
  Rng b(42);
  EXPECT_EQ(matrix_to_string(random_orthogonal(a, 3)), matrix_to_string(random_orthogonal(b, 3)));
}

TEST(Rng, DeterministicStreams) {
  Rng a(7);
  Rng b(7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  Rng c(7);
  Rng d(7);
  EXPECT_EQ(random_psd(c, 4, Wishart{2}), random_psd(d, 4, Wishart{2}));
  EXPECT_EQ(random_gaussian(c, 3), random_gaussian(d, 3));
  EXPECT_EQ(c.permutation(9), d.permutation(9));
}

TEST(Rng, SplitMixReferenceValues) {
  // First outputs of the reference SplitMix64 generator seeded with 0.
  Rng rng(0);
  EXPECT_EQ(rng.next_u64(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.next_u64(), 0x6E789E6AA1B965F4ULL);
}

TEST(Rng, UniformRangeAndIndex) {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(rng.index(7), 7u);
  }
}

TEST(MatrixIo, RoundTripIsExact) {
  Rng rng(17);
  for (int t = 0; t < 50; ++t) {
    const Matrix m = random_gaussian(rng, 1 + rng.index(5)) * 1e-7;
    EXPECT_EQ(matrix_from_string(matrix_to_string(m)), m);
  }
  std::istringstream bad("2\n1 2\n3\n");
  EXPECT_THROW(read_matrix(bad), DomainError);
}

TEST(MatrixIo, TextLayout) {
  EXPECT_EQ(matrix_to_string(Matrix{{1, 0.5}, {-2, 0}}), "2\n1 0.5\n-2 0\n");
}

TEST(Lu, DeterminantMatchesLeibniz) {
  Rng rng(18);
  for (int t = 0; t < 200; ++t) {
    const Matrix a = random_gaussian(rng, 1 + rng.index(6));
    const double want = oracle::leibniz_det(a);
    EXPECT_NEAR(determinant(a), want, 1e-11 * std::max(1.0, std::abs(want)));
  }
}

TEST(Lu, InverseAndSingularity) {
  Rng rng(19);
  const Matrix a = random_gaussian(rng, 4);
  EXPECT_LE(max_abs_diff(a * inverse(a), Matrix::identity(4)), 1e-10);
  EXPECT_THROW(inverse(Matrix{{1, 2}, {2, 4}}), DomainError);
}
