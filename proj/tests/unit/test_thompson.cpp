#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "karcher_cone/random.hpp"
#include "karcher_cone/thompson.hpp"
#include "oracles.hpp"

using namespace karcher_cone;

namespace {

PDMatrix pd_diag(double a, double b) {
  RealVector<double> d(2);
  d << a, b;
  return PDMatrix(HermitianMatrix::diagonal(d));
}

}  // namespace

TEST(MRatio, Examples) {
  std::mt19937_64 rng(1);
  const PDMatrix a = random_pd<double>(3, 1.5, rng);
  EXPECT_NEAR(m_ratio(a, a), 1, 1e-13);
  EXPECT_NEAR(m_ratio(scale(2.0, PDMatrix::identity(3)), PDMatrix::identity(3)),
              2, 1e-15);
  EXPECT_NEAR(m_ratio(pd_diag(1, 4), pd_diag(2, 1)), 4, 1e-14);
}

TEST(MRatio, DominatesInLoewnerOrder) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const PDMatrix x = random_pd<double>(2 + t % 7, 2.0, rng);
    const PDMatrix y = random_pd<double>(x.dim(), 2.0, rng);
    const double m = m_ratio(x, y);
    EXPECT_TRUE(loewner_leq(x.hermitian(), m * y.hermitian(), 1e-10));
    EXPECT_FALSE(loewner_leq(x.hermitian(), 0.99 * m * y.hermitian(), 0.0));
  }
}

TEST(ThompsonDistance, Examples) {
  std::mt19937_64 rng(3);
  const PDMatrix a = random_pd<double>(4, 2.0, rng);
  EXPECT_EQ(thompson_distance(a, a), 0);
  for (double c : {0.25, 0.5, 3.0, 10.0}) {
    EXPECT_NEAR(
        thompson_distance(PDMatrix::identity(3), scale(c, PDMatrix::identity(3))),
        std::abs(std::log(c)), 1e-14);
  }
  EXPECT_NEAR(thompson_distance(pd_diag(1, 4), pd_diag(2, 1)), std::log(4.0),
              1e-14);
}

TEST(ThompsonDistance, AgreesWithGeneralizedEigenOracle) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const PDMatrix x = random_pd<double>(2 + t % 7, 2.0, rng);
    const PDMatrix y = random_pd<double>(x.dim(), 2.0, rng);
    const double expected = oracle::thompson(x.matrix(), y.matrix());
    EXPECT_NEAR(thompson_distance(x, y), expected, 1e-9);
    EXPECT_NEAR(thompson_distance_by_ratio(x, y), expected, 1e-9);
  }
}

TEST(ThompsonDistance, MetricAxioms) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const Index n = 2 + t % 7;
    const PDMatrix x = random_pd<double>(n, 2.0, rng);
    const PDMatrix y = random_pd<double>(n, 2.0, rng);
    const PDMatrix z = random_pd<double>(n, 2.0, rng);
    const double dxy = thompson_distance(x, y);
    EXPECT_GT(dxy, 0);
    EXPECT_NEAR(dxy, thompson_distance(y, x), 1e-10);
    EXPECT_LE(thompson_distance(x, z), dxy + thompson_distance(y, z) + 1e-9);
  }
}

TEST(ThompsonDistance, CongruenceAndInversionIsometry) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 100; ++t) {
    const Index n = 2 + t % 7;
    const PDMatrix x = random_pd<double>(n, 2.0, rng);
    const PDMatrix y = random_pd<double>(n, 2.0, rng);
    const auto m = random_invertible<double>(n, 10.0, rng);
    const double d = thompson_distance(x, y);
    EXPECT_NEAR(thompson_distance(congruence(m, x), congruence(m, y)), d, 1e-9);
    EXPECT_NEAR(thompson_distance(inverse(x), inverse(y)), d, 1e-9);
  }
}

TEST(ThompsonDistance, LogIsContractive) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    const PDMatrix x = random_pd<double>(2 + t % 7, 2.0, rng);
    const PDMatrix y = random_pd<double>(x.dim(), 2.0, rng);
    EXPECT_LE(spectral_norm(matrix_log(x) - matrix_log(y)),
              thompson_distance(x, y) + 1e-9);
  }
}

TEST(ThompsonDistance, IdentityIsLocallyLipschitz) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const PDMatrix x = random_pd<double>(2 + t % 7, 2.0, rng);
    const PDMatrix y = random_pd<double>(x.dim(), 2.0, rng);
    // Smallest M with M x >= 1 and M y >= 1.
    const double m =
        1 / std::min(x.min_eigenvalue(), y.min_eigenvalue());
    const double d = thompson_distance(x, y);
    EXPECT_LE(d, std::log1p(m * norm_distance(x, y)) + 1e-9);
    EXPECT_LE(d, m * norm_distance(x, y) + 1e-9);
  }
}

TEST(ThompsonDistance, DimensionMismatch) {
  EXPECT_THROW(thompson_distance(PDMatrix::identity(2), PDMatrix::identity(3)),
               DimensionMismatch);
  EXPECT_THROW(m_ratio(PDMatrix::identity(2), PDMatrix::identity(3)),
               DimensionMismatch);
  EXPECT_THROW(norm_distance(PDMatrix::identity(2), PDMatrix::identity(3)),
               DimensionMismatch);
}

TEST(NormDistance, Examples) {
  const HermitianMatrix x = pd_diag(1, 5).hermitian();
  EXPECT_EQ(norm_distance(x, x), 0);
  EXPECT_NEAR(norm_distance(HermitianMatrix::identity(2),
                            2.0 * HermitianMatrix::identity(2)),
              1, 1e-15);
  EXPECT_NEAR(norm_distance(x, pd_diag(2, 1).hermitian()), 4, 1e-14);
}

TEST(ThompsonDistance, SmallDistancesCollapseToZero) {
  const PDMatrix a = pd_diag(1, 2);
  const PDMatrix b = pd_diag(1 + 1e-12, 2);
  EXPECT_EQ(thompson_distance(a, b), 0);
  EXPECT_GT(thompson_distance(a, pd_diag(1 + 1e-8, 2)), 0);
}
