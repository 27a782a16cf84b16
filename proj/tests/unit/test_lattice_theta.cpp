#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "madelung/errors.hpp"
#include "madelung/lattice_theta.hpp"

namespace madelung {
namespace {

constexpr double kPi = std::numbers::pi;

// Direct sum prod_j sum_k exp(-pi^2 v k^2 / a^2) cos(pi k x_j / a) over |k| <= K.
double direct_theta(const std::vector<double>& x, double v, double a, int K) {
  double prod = 1.0;
  for (double xj : x) {
    double s = 0.0;
    for (int k = -K; k <= K; ++k) s += std::exp(-kPi * kPi * v * k * k / (a * a)) * std::cos(kPi * k * xj / a);
    prod *= s;
  }
  return prod;
}

TEST(TorusPoint, ReducesAndSnaps) {
  const TorusPoint p({2.5, -0.5, 4.0 - 1e-14}, 1.0);
  EXPECT_DOUBLE_EQ(p[0], 0.5);
  EXPECT_DOUBLE_EQ(p[1], 1.5);
  EXPECT_EQ(p[2], 0.0);
  EXPECT_FALSE(p.is_lattice_point());
  EXPECT_TRUE(TorusPoint({2.0, -4.0}, 1.0).is_lattice_point());
  EXPECT_NEAR(TorusPoint({1.9, 0.0}, 1.0).distance_to_lattice(), 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(TorusPoint({0.0, 0.0, 0.0}, 0.5).cell_volume(), 1.0);
}

TEST(BigTheta, CornerIsTheta4Power) {
  for (double v : {0.2, 1.0, 3.0}) {
    const double t4 = jacobi_theta_zero(4, kPi * v);
    EXPECT_NEAR(big_theta(TorusPoint({1.0, 1.0, 1.0}, 1.0), v), t4 * t4 * t4, 1e-14);
  }
}

TEST(BigTheta, TendsToOneForLargeV) {
  EXPECT_NEAR(big_theta(TorusPoint({0.3, 1.2}, 1.0), 10.0), 1.0, 1e-15);
}

TEST(BigTheta, MatchesDirectDoubleSum) {
  const std::vector<double> x{0.3, 0.7};
  EXPECT_NEAR(big_theta(TorusPoint(x, 1.0), 0.5), direct_theta(x, 0.5, 1.0, 12), 1e-13);
}

TEST(BigTheta, RejectsNonPositiveV) {
  EXPECT_THROW((void)big_theta(TorusPoint({0.3}, 1.0), 0.0), DomainError);
  EXPECT_THROW((void)one_minus_big_theta(TorusPoint({0.3}, 1.0), -1.0), DomainError);
}

TEST(OneMinusBigTheta, SmallVAwayFromLattice) {
  EXPECT_EQ(one_minus_big_theta(TorusPoint({0.9, 1.1}, 1.0), 1e-4), 1.0);
}

TEST(OneMinusBigTheta, OneDimensionalHalfPeriod) {
  EXPECT_NEAR(one_minus_big_theta(TorusPoint({1.0}, 1.0), 1.0), 1.0 - jacobi_theta_zero(4, kPi), 1e-15);
}

TEST(OneMinusBigTheta, LargeVAgainstDirectTail) {
  // Only k = +-1 survive: 1 - Theta = -2 sum_j e^(-pi^2 v) cos(pi x_j) + O(e^(-2 pi^2 v)).
  const double v = 20.0;
  const double q = std::exp(-kPi * kPi * v);
  const double expect = -(2.0 * q * std::cos(kPi * 0.5) + 2.0 * q * std::cos(kPi * 0.5));
  EXPECT_NEAR(one_minus_big_theta(TorusPoint({0.5, 0.5}, 1.0), v), expect, 1e-15);
  const double off = one_minus_big_theta(TorusPoint({0.2, 0.9}, 1.0), v);
  EXPECT_NEAR(off / (-2.0 * q * (std::cos(kPi * 0.2) + std::cos(kPi * 0.9))), 1.0, 1e-12);
}

TEST(HeatResidual, SecondOrder) {
  const double r1 = heat_residual(TorusPoint({0.4}, 1.0), 0.3, 1e-3);
  const double r2 = heat_residual(TorusPoint({0.4}, 1.0), 0.3, 5e-4);
  EXPECT_LT(std::abs(r1), 1e-4);
  EXPECT_NEAR(r1 / r2, 4.0, 0.2);
  EXPECT_LT(std::abs(heat_residual(TorusPoint({0.5, 0.9}, 1.0), 1.0, 1e-3)), 1e-5);
}

TEST(AlternatingCellSum, MatchesExplicitSum) {
  double explicit_sum = 0.0;
  for (int mask = 0; mask < 8; ++mask) {
    const std::vector<double> x{(mask & 1) ? 1.0 : 0.0, (mask & 2) ? 1.0 : 0.0, (mask & 4) ? 1.0 : 0.0};
    explicit_sum += ((__builtin_popcount(static_cast<unsigned>(mask)) % 2) ? -1.0 : 1.0) *
                    big_theta(TorusPoint(x, 1.0), 1.0);
  }
  EXPECT_NEAR(alternating_cell_sum(3, 1.0, 1.0), explicit_sum, 1e-13);
}

TEST(AlternatingCellSum, OneDimension) {
  for (double v : {0.1, 1.0}) {
    EXPECT_NEAR(alternating_cell_sum(1, v, 1.0),
                jacobi_theta_zero(3, kPi * v) - jacobi_theta_zero(4, kPi * v), 1e-14);
  }
}

TEST(AlternatingCellSum, DecaysLikeLeadingTerm) {
  const double v = 10.0;
  const double lead = 4.0 * std::exp(-kPi * kPi * v);
  EXPECT_NEAR(alternating_cell_sum(2, v, 1.0) / (lead * lead), 1.0, 1e-12);
}

}  // namespace
}  // namespace madelung
