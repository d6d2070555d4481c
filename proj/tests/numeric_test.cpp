#include "nlvar/error.hpp"
#include "nlvar/numeric.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace nlvar {
namespace {

TEST(CompensatedSum, RecoversCancelledLowOrderBits) {
  CompensatedSum s;
  s.add(1.0);
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  EXPECT_EQ(s.value(), 2.0);
}

TEST(CompensatedSum, SpanHelperMatchesAccumulator) {
  std::vector<double> xs{0.1, 0.2, 0.3, -0.6};
  CompensatedSum s;
  for (double x : xs) s += x;
  EXPECT_EQ(compensated_sum(xs), s.value());
  EXPECT_EQ(compensated_sum(xs), 0x1p-55);  // exact sum of the four doubles
}

class AbsPowerModes : public ::testing::TestWithParam<double> {};

TEST_P(AbsPowerModes, MatchesStdPowAndDerivative) {
  const double p = GetParam();
  const AbsPower pw(p);
  for (double x : {-2.5, -1.0, -0.3, 0.0, 1e-9, 0.7, 3.0}) {
    const double ref = std::pow(std::abs(x), p);
    EXPECT_NEAR(pw(x), ref, 1e-14 * std::max(1.0, ref)) << "x=" << x;
    const double dref = x == 0.0 ? 0.0 : p * std::pow(std::abs(x), p - 1.0) * (x > 0 ? 1 : -1);
    EXPECT_NEAR(pw.derivative(x), dref, 1e-13 * std::max(1.0, std::abs(dref))) << "x=" << x;
  }
  EXPECT_NEAR(pw.of_squared(4.0), std::pow(2.0, p), 1e-13);
  EXPECT_NEAR(pw.gradient_factor_of_squared(4.0), p * std::pow(2.0, p - 2.0), 1e-13);
}

INSTANTIATE_TEST_SUITE_P(Exponents, AbsPowerModes,
                         ::testing::Values(1.2, 1.5, 2.0, 2.5, 3.0, 4.0, 1.0 + 1e-3));

TEST(AbsPower, RejectsExponentsAtOrBelowOne) {
  EXPECT_THROW(AbsPower(1.0), Error);
  EXPECT_THROW(AbsPower(0.5), Error);
  EXPECT_THROW(AbsPower(std::nan("")), Error);
}

}  // namespace
}  // namespace nlvar
