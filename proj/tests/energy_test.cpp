#include "nlvar/energy.hpp"
#include "nlvar/error.hpp"
#include "nlvar/represent.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace nlvar {
namespace {

GridFunction random_function(const Domain& d, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> v(d.size());
  for (double& x : v) x = dist(rng);
  return GridFunction(d, std::move(v));
}

std::vector<Kernel> sample_kernels(const Domain& d) {
  std::vector<Kernel> ks;
  ks.push_back(Kernel::ball_average(d, d.center(), 0.2));
  ks.push_back(Kernel::ball_average(d, {0.35, 0.6, 0.0}, 0.25));
  ks.push_back(Kernel::strip(d, 4));
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> node(0, d.size() - 1);
  std::vector<DenseEntry> e;
  for (int n = 0; n < 40; ++n) e.push_back({node(rng), node(rng), 0.5 + n % 3});
  ks.push_back(Kernel::dense(d, e));
  return ks;
}

class KernelEnergy : public ::testing::TestWithParam<double> {};

TEST_P(KernelEnergy, ShortcutsMatchTheDirectDoubleSum) {
  const double p = GetParam();
  const Domain d = Domain::unit_box(2, 15);
  std::mt19937_64 rng(1);
  const GridFunction u = random_function(d, rng);
  for (const Kernel& k : sample_kernels(d)) {
    const double fast = kernel_energy(k, u.values(), p);
    const double direct = kernel_energy_direct(k, u.values(), p);
    EXPECT_NEAR(fast, direct, 1e-12 * std::abs(direct)) << k.name();
  }
}

TEST_P(KernelEnergy, GradientMatchesFiniteDifferences) {
  const double p = GetParam();
  const Domain d = Domain::unit_box(2, 11);
  std::mt19937_64 rng(2);
  GridFunction u = random_function(d, rng);
  for (const Kernel& k : sample_kernels(d)) {
    const FunctionalSpec spec = FunctionalSpec::with_kernel(k, p);
    std::vector<double> g(d.size());
    energy_and_gradient(spec, u.values(), g);
    for (std::size_t i = 0; i < d.size(); i += 7) {
      const double h = 1e-6;
      GridFunction up = u, um = u;
      up[i] += h;
      um[i] -= h;
      const double fd = (evaluate(spec, up).total - evaluate(spec, um).total) / (2 * h);
      EXPECT_NEAR(g[i], fd, 1e-6 * std::max(1.0, std::abs(fd))) << k.name() << " node " << i;
    }
  }
}

TEST_P(KernelEnergy, LimitEnvelopeGradientMatchesFiniteDifferences) {
  const double p = GetParam();
  const Domain d = Domain::unit_box(2, 9);
  std::mt19937_64 rng(4);
  GridFunction u = random_function(d, rng);
  const FunctionalSpec spec = FunctionalSpec::limit(d, p);
  std::vector<double> g(d.size());
  const double e = energy_and_gradient(spec, u.values(), g);
  EXPECT_NEAR(e, evaluate(spec, u).total, 1e-12 * e);
  for (std::size_t i = 0; i < d.size(); i += 5) {
    const double h = 1e-6;
    GridFunction up = u, um = u;
    up[i] += h;
    um[i] -= h;
    const double fd = (evaluate(spec, up).total - evaluate(spec, um).total) / (2 * h);
    EXPECT_NEAR(g[i], fd, 1e-6 * std::max(1.0, std::abs(fd))) << "node " << i;
  }
}

INSTANTIATE_TEST_SUITE_P(Exponents, KernelEnergy, ::testing::Values(1.5, 2.0, 3.0));

TEST(Energy, ZeroFunctionHasZeroEnergy) {
  const Domain d = Domain::unit_box(2, 15);
  const GridFunction zero(d);
  for (const Kernel& k : sample_kernels(d)) {
    EXPECT_EQ(evaluate(FunctionalSpec::with_kernel(k, 2.0), zero).total, 0.0);
  }
  EXPECT_EQ(eval_F_limit(1.5, zero).total, 0.0);
}

TEST(Energy, EvalFkNeedsAKernel) {
  const Domain d = Domain::unit_box(2, 5);
  EXPECT_THROW(eval_Fk(FunctionalSpec::limit(d, 2.0), GridFunction(d)), Error);
  EXPECT_THROW(FunctionalSpec::gradient_only(d, 1.0), Error);
}

TEST(Energy, VarianceIdentityOnSmallGrids) {
  std::mt19937_64 rng(17);
  for (int n : {3, 8, 21}) {
    const Domain d = Domain::unit_box(1, n);
    const GridFunction u = random_function(d, rng);
    const double h = d.cell_volume();
    double mean = 0.0;
    for (double v : u.values()) mean += v * h;
    mean /= d.measure();
    double lhs = 0.0;
    for (double v : u.values()) lhs += (v - mean) * (v - mean) * h;
    lhs += Quadrature::of(d).boundary_weight * mean * mean;
    double rhs = 0.0;
    for (double a : u.values()) {
      for (double b : u.values()) rhs += (a - b) * (a - b) * h * h;
      rhs += 2.0 * a * a * h * Quadrature::of(d).boundary_weight;
    }
    rhs /= 2.0 * d.measure();
    EXPECT_NEAR(lhs, rhs, 1e-13 * rhs);
    EXPECT_NEAR(eval_F_limit(2.0, u).nonlocal, lhs, 1e-13 * lhs);
  }
}

TEST(StructuralChecks, OscillationBoundHoldsForEveryKernel) {
  const Domain d = Domain::unit_box(2, 13);
  std::mt19937_64 rng(6);
  for (const Kernel& k : sample_kernels(d)) {
    for (double p : {1.5, 2.0, 3.0}) {
      const FunctionalSpec spec = FunctionalSpec::with_kernel(k, p);
      const GridFunction u = random_function(d, rng, 2.0);
      const BoundCheck b = check_oscillation_bound(spec, u, spec.nonlocal_mass());
      EXPECT_TRUE(b.holds) << k.name() << " p=" << p << " slack " << b.slack;
    }
  }
}

TEST(StructuralChecks, OscillationBoundNeedsEnoughMass) {
  const Domain d = Domain::unit_box(2, 13);
  const FunctionalSpec spec = FunctionalSpec::with_kernel(Kernel::strip(d, 4), 2.0);
  try {
    check_oscillation_bound(spec, GridFunction(d), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ContractViolation);
  }
}

TEST(StructuralChecks, TruncationDoesNotIncreaseEnergy) {
  const Domain d = Domain::unit_box(2, 11);
  std::mt19937_64 rng(8);
  for (const Kernel& k : sample_kernels(d)) {
    const GridFunction u = random_function(d, rng, 2.0);
    for (double m : {0.1, 0.5, 1.5}) {
      const auto r = check_truncation_monotone(FunctionalSpec::with_kernel(k, 1.5), u, clamp_map(m));
      EXPECT_TRUE(r.holds) << r.slack;
    }
    const auto abs_map = [](double s) { return std::abs(s); };
    EXPECT_TRUE(check_truncation_monotone(FunctionalSpec::with_kernel(k, 3.0), u, abs_map).holds);
  }
}

TEST(StructuralChecks, ParallelogramLawSeparatesTheQuadraticCase) {
  const Domain d = Domain::unit_box(2, 11);
  std::mt19937_64 rng(10);
  const GridFunction u = random_function(d, rng);
  const GridFunction v = random_function(d, rng);
  const Kernel k = Kernel::ball_average(d, d.center(), 0.2);
  EXPECT_LE(std::abs(parallelogram_defect(FunctionalSpec::with_kernel(k, 2.0), u, v)), 1e-10);
  EXPECT_LE(std::abs(parallelogram_defect(FunctionalSpec::limit(d, 2.0), u, v)), 1e-10);
  EXPECT_GT(std::abs(parallelogram_defect(FunctionalSpec::with_kernel(k, 3.0), u, v)), 1e-6);
}

TEST(LevelEnergy, DerivativeInTheLevel) {
  const Domain d = Domain::unit_box(2, 7);
  std::mt19937_64 rng(12);
  const GridFunction u = random_function(d, rng);
  double dt = 0.0;
  level_energy(d, u.values(), 1.5, 0.1, {}, &dt);
  const double h = 1e-6;
  const double fd = (level_energy(d, u.values(), 1.5, 0.1 + h) -
                     level_energy(d, u.values(), 1.5, 0.1 - h)) / (2 * h);
  EXPECT_NEAR(dt, fd, 1e-7);
  const double t = p_median(u, 1.5).t;
  level_energy(d, u.values(), 1.5, t, {}, &dt);
  EXPECT_NEAR(dt, 0.0, 1e-12);
}

}  // namespace
}  // namespace nlvar
