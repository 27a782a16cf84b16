#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "madelung/errors.hpp"
#include "madelung/special_functions.hpp"

namespace madelung {
namespace {

constexpr double kPi = std::numbers::pi;

double theta3_i() { return std::pow(2.0, -0.5) * std::pow(kPi, -0.75) * std::tgamma(0.25); }

TEST(JacobiTheta, Theta3AtLemniscaticPoint) {
  const double t = jacobi_theta(3, {0.0, 1.0}).real();
  EXPECT_NEAR(t, theta3_i(), 1e-15);
  EXPECT_NEAR(t, 1.0864348112133080, 1e-15);
}

TEST(JacobiTheta, LargeVKeepsOnlyFirstTerms) {
  const double t = jacobi_theta(3, {0.0, 50.0}).real();
  EXPECT_EQ(t, 1.0);  // 2 e^(-50 pi) is below one ulp
  EXPECT_NEAR(theta3_minus_one(0.0, 20.0) / (2.0 * std::exp(-20.0 * kPi)), 1.0, 1e-14);
}

TEST(JacobiTheta, Theta4AtLemniscaticPoint) {
  EXPECT_NEAR(jacobi_theta(4, {0.0, 1.0}).real(), std::pow(2.0, -0.25) * theta3_i(), 1e-15);
  EXPECT_NEAR(jacobi_theta_zero(2, 1.0), jacobi_theta_zero(4, 1.0), 1e-15);
}

TEST(JacobiTheta, ZeroValuesForSmallV) {
  EXPECT_NEAR(jacobi_theta_zero(3, 0.01), 10.0, 1e-13);
  const double t4 = jacobi_theta_zero(4, 0.01);
  EXPECT_NEAR(t4 / (20.0 * std::exp(-25.0 * kPi)), 1.0, 1e-12);
}

TEST(JacobiTheta, DomainErrors) {
  EXPECT_THROW((void)jacobi_theta(3, {0.0, 0.0}), DomainError);
  EXPECT_THROW((void)jacobi_theta(3, {0.0, -1.0}), DomainError);
  EXPECT_THROW((void)jacobi_theta(3, {0.0, 1.0, 0.0}), DomainError);
  EXPECT_THROW((void)jacobi_theta(5, {0.0, 1.0}), DomainError);
  EXPECT_THROW((void)theta1_prime_zero(0.0), DomainError);
  EXPECT_THROW((void)tail_bound(3, 1.0, 0.5), DomainError);
}

TEST(JacobiTheta, ComplexArgumentAgreesAcrossModularBranch) {
  // v = 0.999 uses the transformed series, v = 1 the direct one.
  const std::complex<double> z(0.4, 0.2);
  for (int kind = 1; kind <= 4; ++kind) {
    const auto lo = jacobi_theta(kind, {z, 0.999999999});
    const auto hi = jacobi_theta(kind, {z, 1.0});
    EXPECT_LT(std::abs(lo - hi), 1e-8) << "kind " << kind;
  }
}

TEST(JacobiTheta, DerivativeMatchesFiniteDifference) {
  const std::complex<double> z(0.3, 0.1);
  const double h = 1e-5;
  for (int kind = 1; kind <= 4; ++kind) {
    for (double v : {0.4, 1.7}) {
      const auto d = jacobi_theta_prime(kind, {z, v});
      const auto fd = (jacobi_theta(kind, {z + h, v}) - jacobi_theta(kind, {z - h, v})) / (2.0 * h);
      EXPECT_LT(std::abs(d - fd), 1e-8) << "kind " << kind << " v " << v;
    }
  }
}

TEST(Theta1Prime, JacobiIdentity) {
  const double t3 = jacobi_theta_zero(3, 1.0);
  const double p = theta1_prime_zero(1.0);
  EXPECT_NEAR(p, std::pow(2.0, -0.5) * t3 * t3 * t3, 1e-14);
  EXPECT_NEAR(p, jacobi_theta_zero(2, 1.0) * t3 * jacobi_theta_zero(4, 1.0), 1e-14);
  EXPECT_NEAR(p, 0.9067676551677, 1e-12);
}

TEST(Theta1Prime, LeadingTermForLargeV) {
  for (double v : {10.0, 40.0, 200.0}) {
    EXPECT_NEAR(theta1_prime_zero(v) / (2.0 * std::exp(-kPi * v / 4.0)), 1.0, 1e-12) << v;
  }
}

TEST(Theta3MinusOne, KeepsRelativePrecision) {
  const double v = 30.0;
  EXPECT_NEAR(theta3_minus_one(0.0, v) / (2.0 * std::exp(-kPi * v)), 1.0, 1e-14);
}

TEST(TailBound, DominatesAndDecays) {
  const double b = tail_bound(3, 1.0, 10.0);
  EXPECT_GT(b, 6.0 * std::exp(-10.0 * kPi * kPi));
  EXPECT_LT(b, 1e-40);
  EXPECT_LT(tail_bound(2, 1.0, 100.0), 1e-300);
}

TEST(Lemniscatic, ConstantsAreConsistent) {
  const auto& c = lemniscatic_constants();
  EXPECT_NEAR(c.bigK, std::tgamma(0.25) * std::tgamma(0.25) / (4.0 * std::sqrt(kPi)), 1e-14);
  EXPECT_NEAR(c.bigK, 1.8540746773013719, 1e-15);
}

}  // namespace
}  // namespace madelung
