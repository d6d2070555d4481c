#include "nlvar/error.hpp"
#include "nlvar/gammaexp.hpp"
#include "nlvar/represent.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace nlvar {
namespace {

using std::numbers::pi;

TEST(EventuallyDecreasing, Definition) {
  EXPECT_TRUE(eventually_decreasing({}));
  EXPECT_FALSE(eventually_decreasing({1.0, 2.0}));
  EXPECT_TRUE(eventually_decreasing({2.0, 2.0}));
  EXPECT_FALSE(eventually_decreasing({2.0, 1.0, 1.5}));
  EXPECT_TRUE(eventually_decreasing({1.0, 3.0, 2.0, 2.0, 0.5}));
  EXPECT_FALSE(eventually_decreasing({3.0, 2.0, 1.0, 1.1}));
}

TEST(StandardLoads, FiveNamedLoads) {
  const Domain d = Domain::unit_box(2, 15);
  const auto loads = standard_loads(d);
  ASSERT_EQ(loads.size(), 5u);
  ASSERT_EQ(standard_load_names().size(), 5u);
  for (double g : loads[0].density().values()) EXPECT_EQ(g, 1.0);
  EXPECT_THROW(standard_loads(Domain::unit_box(1, 15)), Error);
}

TEST(KernelFamily, BallAndStripMembers) {
  const Domain d = Domain::unit_box(2, 31);
  const KernelFamily balls{d, FamilyType::BallAverage, {0.5, 0.5, 0}, SequenceSchedule::radii({0.2, 0.1})};
  EXPECT_EQ(balls.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<BallAverage>(balls.at(1).variant()));
  const KernelFamily strips{d, FamilyType::Strip, {}, SequenceSchedule::indices({2, 4})};
  EXPECT_TRUE(std::holds_alternative<Strip>(strips.at(0).variant()));
}

TEST(GammaSweep, SmallBallFamilyApproachesTheLimit) {
  const Domain d = Domain::unit_box(2, 63);
  const KernelFamily fam{d, FamilyType::BallAverage, {0.5, 0.5, 0},
                         SequenceSchedule::radii({0.2, 0.1, 0.05})};
  const auto loads = standard_loads(d);
  const GammaSweepReport r = gamma_sweep(2.0, fam, loads);
  EXPECT_TRUE(r.all_converged);
  ASSERT_EQ(r.rows.size(), 15u);
  ASSERT_EQ(r.limit_min.size(), 5u);
  for (std::size_t l = 0; l < loads.size(); ++l) {
    EXPECT_EQ(r.row(2, l).load, l);
    EXPECT_EQ(r.row(2, l).parameter, 0.05);
    EXPECT_GE(r.limit_min[l], r.gradient_only_min[l] - 1e-12);
  }
  EXPECT_LT(r.final_relative_gap(), 0.1);
  EXPECT_TRUE(r.trend());
}

TEST(GammaSweep, RefusesBallsAboveTheDimension) {
  const Domain d = Domain::unit_box(2, 31);
  const KernelFamily fam{d, FamilyType::BallAverage, {0.5, 0.5, 0}, SequenceSchedule::radii({0.2})};
  try {
    gamma_sweep(3.0, fam, standard_loads(d));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Refusal);
  }
}

// Continuum values for u = sin(pi x) sin(pi y), from a separate series evaluation.
TEST(StripExample, GapsShrinkWithK) {
  const Domain d = Domain::unit_box(2, 127);
  const GridFunction u =
      GridFunction::sample(d, [](const Point& x) { return std::sin(pi * x[0]) * std::sin(pi * x[1]); });
  const StripReport r = strip_example_check(u, SequenceSchedule::indices({4, 8, 16, 32}));
  ASSERT_EQ(r.rows.size(), 4u);
  EXPECT_TRUE(r.decreasing);
  EXPECT_NEAR(r.limit, 5.434802200544679, 1e-3);
  const double continuum[] = {0.20318, 0.15021, 0.08824, 0.047413};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(r.rows[i].gap, continuum[i], 1e-3) << r.rows[i].k;
  const double len[] = {2.0, 1.0};
  const int n[] = {15, 15};
  EXPECT_THROW(strip_example_check(GridFunction(Domain(2, len, n)), SequenceSchedule::indices({2})),
               Error);
}

TEST(VanishingNu, BallsPassStripsDoNot) {
  const Domain d = Domain::unit_box(2, 63);
  const auto compacts = nested_compacts(d);
  ASSERT_FALSE(compacts.empty());
  EXPECT_NEAR(compacts.front().lower[0], 0.25, 1e-15);
  const KernelFamily balls{d, FamilyType::BallAverage, {0.5, 0.5, 0},
                           SequenceSchedule::radii({0.2, 0.1, 0.05})};
  const KernelFamily strips{d, FamilyType::Strip, {}, SequenceSchedule::indices({4, 8, 16})};
  EXPECT_TRUE(vanishing_nu_check(balls, compacts).passes);
  const VanishingNuReport s = vanishing_nu_check(strips, compacts);
  EXPECT_FALSE(s.passes);
  for (double v : s.sup_defect) EXPECT_GT(v, 0.1);
}

TEST(Jensen, ChainHolds) {
  const Domain d = Domain::unit_box(2, 31);
  const Kernel ball = Kernel::ball_average(d, {0.4, 0.6, 0}, 0.15);
  const GridFunction u = GridFunction::sample(d, [](const Point& x) { return std::exp(x[0]) - x[1] * x[1]; });
  for (double p : {1.5, 2.0, 3.0}) {
    const JensenChain c = jensen_chain(ball, u, p);
    EXPECT_TRUE(c.holds) << p;
    EXPECT_GE(c.nonlocal, c.median_term);
  }
  EXPECT_THROW(jensen_chain(Kernel::strip(d, 2), u, 2.0), Error);
}

TEST(Recovery, EnergiesApproachTheLimit) {
  const Domain d = Domain::unit_box(2, 63);
  const Point c{0.5, 0.5, 0};
  const GridFunction u = GridFunction::sample(d, [&](const Point& x) {
    const double r = std::hypot(x[0] - c[0], x[1] - c[1]);
    return r <= 0.3 ? 0.0 : (r - 0.3) * std::sin(pi * x[0]) * std::sin(pi * x[1]);
  });
  const RecoveryReport r = recovery_check(u, 2.0, c, SequenceSchedule::radii({0.25, 0.12, 0.06}));
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_TRUE(r.decreasing);
  for (const auto& row : r.rows) EXPECT_GT(row.capacity, 0.0);

  const GridFunction bad = GridFunction::sample(d, [](const Point&) { return 1.0; });
  EXPECT_THROW(recovery_check(bad, 2.0, c, SequenceSchedule::radii({0.1})), Error);
}

}  // namespace
}  // namespace nlvar
