#include "nlvar/covering.hpp"
#include "nlvar/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

namespace nlvar {
namespace {

TEST(Checkerboard, Membership) {
  const CheckerboardParams c{0.1, 0.2, 0};
  EXPECT_TRUE(in_A(0.15, c));
  EXPECT_FALSE(in_A(0.35, c));
  EXPECT_TRUE(in_A(0.55, c));
  EXPECT_FALSE(in_E(0.15, 0.15, c));
  EXPECT_TRUE(in_E(0.15, 0.35, c));
  EXPECT_TRUE(in_E(0.35, 0.15, c));
}

TEST(Gamma, ClosedFormAgainstSampling) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> zd(-2.0, 2.0), bd(0.01, 0.5);
  for (int i = 0; i < 200; ++i) {
    const double z = zd(rng), beta = bd(rng);
    const double g = gamma_z(z, beta);
    EXPECT_GE(g, 0.0);
    EXPECT_LE(g, beta + 1e-15);
    EXPECT_NEAR(gamma_z_sampling_oracle(z, beta, 20000), g, 2.0 * beta / 20000 + 1e-14);
  }
  EXPECT_NEAR(gamma_z(0.37, 0.1), 0.03, 1e-15);
  EXPECT_EQ(gamma_z(0.0, 0.1), 0.0);
}

TEST(Gamma, SamplingOracleNeedsEnoughOffsets) {
  EXPECT_THROW(gamma_z_sampling_oracle(0.3, 0.1, 10), Error);
}

TEST(Gamma, IntegralMatchesQuadrature) {
  const double z = 0.713, a = 0.04, b = 0.09;
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += gamma_z(z, a + (i + 0.5) * (b - a) / n);
  EXPECT_NEAR(gamma_integral(z, a, b), sum * (b - a) / n, 1e-10);
  EXPECT_NEAR(gamma_integral(-z, a, b), gamma_integral(z, a, b), 1e-16);
}

// Reference averages from 40-digit piecewise quadrature.
TEST(CoveringAverage, FrozenValues) {
  EXPECT_NEAR(covering_average(0.37, 0.05), 0.0016045238095238095238, 1e-17);
  EXPECT_NEAR(covering_average(1.0, 0.01), 7.4981265722985181012e-05, 1e-18);
  EXPECT_NEAR(covering_average(0.05, 0.05), 0.0025, 1e-17);
  EXPECT_NEAR(covering_average(0.2, 0.003), 6.6169603283208180254e-06, 1e-19);
  EXPECT_DOUBLE_EQ(d_eps_measure(0.1), 0.015);
}

TEST(CoveringAverage, LowerBoundAwayFromTheDiagonal) {
  for (double eta : {0.05, 0.25, 0.4}) {
    const double eps = 3.0 * eta * eta / 64.0;
    for (int i = 0; i <= 400; ++i) {
      const double z = eta + i * (2.0 - eta) / 400.0;
      EXPECT_GE(covering_slack(z, eps, eta), -1e-15) << z << " " << eta;
      EXPECT_GE(averaged_lower_bound_slack(z, eps), -1e-15) << z << " " << eps;
    }
  }
}

TEST(CoveringAverage, TriangleComparison) {
  for (double z : {0.1, 0.5, 1.3}) {
    for (int m = 2; m < 40; ++m) EXPECT_GE(triangle_comparison_slack(z, m), -1e-16) << z << " " << m;
  }
}

TEST(DiscreteMeasure, MergesAndRefuses) {
  const std::vector<Point> pts{{0.1, 0.1, 0}, {0.8, 0.2, 0}, {0.5, 0.9, 0}};
  DiscreteMeasure mu(2, pts, {{0, 1, 0.5}, {1, 0, 0.25}, {1, 0, 0.25}, {0, 2, 1.0}, {2, 0, 1.0}});
  EXPECT_EQ(mu.entries().size(), 4u);
  EXPECT_DOUBLE_EQ(mu.total_mass(), 3.0);
  EXPECT_THROW(DiscreteMeasure(2, pts, {{0, 0, 1.0}}), Error);
  EXPECT_THROW(DiscreteMeasure(2, pts, {{0, 1, 1.0}, {1, 0, 0.5}}), Error);
  EXPECT_THROW(DiscreteMeasure(2, pts, {{0, 1, -1.0}, {1, 0, -1.0}}), Error);
  try {
    DiscreteMeasure(2, pts, {{0, 1, 1.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Refusal);
  }
}

TEST(DiscreteMeasure, CsvOnGrid) {
  const Domain d = Domain::unit_box(2, 4);
  std::istringstream in("i,j,w\n0,5,2.0\n5,0,2.0\n");
  const DiscreteMeasure mu = DiscreteMeasure::from_csv(d, in);
  EXPECT_DOUBLE_EQ(mu.total_mass(), 4.0);
  EXPECT_EQ(mu.points().size(), d.size());
}

DiscreteMeasure random_measure(std::uint64_t seed, int dim, std::size_t n, double spread) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g(0.0, spread);
  std::vector<Point> pts;
  std::vector<MeasureEntry> e;
  for (std::size_t i = 0; i < n; ++i) {
    Point x{}, y{};
    for (int a = 0; a < dim; ++a) {
      x[a] = u(rng);
      y[a] = x[a] + g(rng);
    }
    pts.push_back(x);
    pts.push_back(y);
    const double w = u(rng);
    e.push_back({2 * i, 2 * i + 1, w});
    e.push_back({2 * i + 1, 2 * i, w});
  }
  return DiscreteMeasure(dim, std::move(pts), std::move(e));
}

TEST(MassBound, FubiniOrdersAgree) {
  const DiscreteMeasure mu = random_measure(41, 2, 300, 0.3);
  const FubiniSums f = fubini_surrogate(mu, {0.01, 16, 8});
  EXPECT_NEAR(f.samples_outer, f.pairs_outer, 1e-12 * std::abs(f.pairs_outer));
}

TEST(MassBound, HoldsForRandomMeasures) {
  for (int dim : {1, 2, 3}) {
    for (double spread : {0.05, 0.3, 1.0}) {
      const DiscreteMeasure mu = random_measure(50 + dim, dim, 200, spread);
      const MassBound b = measure_mass_bound(mu, 0.25);
      EXPECT_TRUE(b.holds) << dim << " " << spread << " ratio " << b.ratio;
      EXPECT_LE(b.ratio, 1.0);
      EXPECT_NEAR(b.bound, 2.0 * dim * b.m_star / 0.5, 1e-15 * b.bound);
    }
  }
}

TEST(MassBound, NearDiagonalMassIsFree) {
  const DiscreteMeasure mu = random_measure(60, 2, 100, 0.001);
  EXPECT_EQ(off_diagonal_mass(mu, 0.25), 0.0);
  EXPECT_TRUE(measure_mass_bound(mu, 0.0, 0.25).holds);
}

TEST(MassBound, SamplesFollowTheSchedule) {
  const auto s = checkerboard_samples({0.1, 4, 2}, 1);
  ASSERT_EQ(s.size(), 8u);
  EXPECT_NEAR(s.front().beta, 0.125, 1e-15);
  EXPECT_NEAR(s.front().alpha, 0.125 / 8, 1e-15);
  EXPECT_NEAR(s.back().beta, 0.175, 1e-15);
  EXPECT_EQ(s.back().axis, 1);
}

}  // namespace
}  // namespace nlvar
