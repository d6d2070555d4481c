#include "nlvar/error.hpp"
#include "nlvar/kernel.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace nlvar {
namespace {

TEST(BallAverage, MassIsTheDomainMeasure) {
  const Domain d = Domain::unit_box(2, 39);
  const Kernel k = Kernel::ball_average(d, d.center(), 0.1);
  EXPECT_NEAR(mass(k), 1.0, 1e-14);
  EXPECT_NEAR(k.ball_measure(), k.ball_nodes().size() * d.cell_volume(), 1e-15);
  // 0.1 / h = 4 nodes of radius: the lattice disk of radius 4 has 49 points
  EXPECT_EQ(k.ball_nodes().size(), 49u);
}

TEST(BallAverage, RefusesUnresolvedOrEscapingBalls) {
  const Domain d = Domain::unit_box(2, 19);
  try {
    Kernel::ball_average(d, d.center(), 0.05);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Refusal);
  }
  EXPECT_THROW(Kernel::ball_average(d, {0.1, 0.5, 0.0}, 0.2), Error);
  EXPECT_THROW(Kernel::ball_average(d, d.center(), -1.0), Error);
}

TEST(Strip, MassIsTwiceTheDomainMeasure) {
  const Domain d = Domain::unit_box(2, 31);
  for (int k : {2, 4, 8, 16, 32, 64}) {
    const Kernel s = Kernel::strip(d, k);
    EXPECT_NEAR(mass(s), 2.0, 1e-13) << "k=" << k;
  }
}

TEST(Strip, OnlyDefinedInTwoDimensions) {
  EXPECT_THROW(Kernel::strip(Domain::unit_box(3, 4), 2), Error);
  EXPECT_THROW(Kernel::strip(Domain::unit_box(2, 4), 0), Error);
}

TEST(Dense, MergesAndSortsEntries) {
  const Domain d = Domain::unit_box(1, 4);
  const Kernel k = Kernel::dense(d, {{2, 1, 1.0}, {0, 3, 2.0}, {2, 1, 0.5}});
  const auto& e = std::get<Dense>(k.variant()).entries;
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e[0].i, 0u);
  EXPECT_DOUBLE_EQ(e[1].weight, 1.5);
  const double w = d.cell_volume();
  EXPECT_NEAR(mass(k), 3.5 * w * w, 1e-16);
}

TEST(Dense, ReadsCsvWithHeaderAndComments) {
  const Domain d = Domain::unit_box(1, 4);
  std::istringstream in("i,j,weight\n# comment\n0,1,0.25\n1,0,0.25\r\n\n3,2,1\n");
  const Kernel k = Kernel::dense_from_csv(d, in);
  EXPECT_EQ(std::get<Dense>(k.variant()).entries.size(), 3u);
  std::istringstream bad("0,1,0.5\n0,x,1\n");
  EXPECT_THROW(Kernel::dense_from_csv(d, bad), Error);
  std::istringstream outside("0,9,0.5\n");
  EXPECT_THROW(Kernel::dense_from_csv(d, outside), Error);
  std::istringstream negative("0,1,-0.5\n");
  EXPECT_THROW(Kernel::dense_from_csv(d, negative), Error);
}

TEST(ConcentrationDefect, InteriorDenseSupportHasNoDefect) {
  const Domain d = Domain::unit_box(2, 9);
  const std::size_t a = d.linear_index({4, 4, 0});
  const std::size_t b = d.linear_index({5, 6, 0});
  const Kernel k = Kernel::dense(d, {{a, b, 1.0}, {b, a, 1.0}});
  const Box compact{{0.3, 0.3, 0}, {0.7, 0.7, 0}};
  EXPECT_EQ(concentration_defect(k, compact), 0.0);
}

TEST(ConcentrationDefect, StripMassEscapesEveryFixedCompact) {
  const Domain d = Domain::unit_box(2, 63);
  const Box compact{{0.1, 0.1, 0}, {0.9, 0.9, 0}};
  EXPECT_NEAR(concentration_defect(Kernel::strip(d, 16), compact), 2.0, 1e-12);
  const Kernel ball = Kernel::ball_average(d, d.center(), 0.1);
  EXPECT_NEAR(concentration_defect(ball, compact), 1.0 - 0.8 * 0.8, 0.05);
}

TEST(SequenceSchedule, EnforcesMonotonicity) {
  EXPECT_NO_THROW(SequenceSchedule::radii({0.2, 0.1}));
  EXPECT_THROW(SequenceSchedule::radii({0.1, 0.2}), Error);
  EXPECT_THROW(SequenceSchedule::indices({4, 4}), Error);
  EXPECT_THROW(SequenceSchedule::indices({}), Error);
  EXPECT_THROW(SequenceSchedule::radii({-1.0}), Error);
}

}  // namespace
}  // namespace nlvar
