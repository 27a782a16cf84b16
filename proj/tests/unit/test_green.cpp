#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "madelung/errors.hpp"
#include "madelung/green.hpp"

namespace madelung {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(PsiIntegral, OneDimensionalValues) {
  EXPECT_NEAR(psi_integral(TorusPoint({1.0}, 1.0)).value, 1.0 / 12.0, 1e-12);
  EXPECT_NEAR(psi_integral(TorusPoint({0.0}, 1.0)).value, -1.0 / 6.0, 1e-12);
  EXPECT_NEAR(psi_integral(TorusPoint({0.7}, 2.0)).value, psi_1d(0.7, 2.0).value, 1e-12);
}

TEST(PsiIntegral, CentreOfSquareCell) {
  const GreenValue g = psi_integral(TorusPoint({1.0, 1.0}, 1.0));
  EXPECT_NEAR(g.value, 0.0551589000381629, 1e-13);
  EXPECT_EQ(g.normalization, Normalization::kZeroMean);
  EXPECT_NEAR(psi_fourier_partial(TorusPoint({1.0, 1.0}, 1.0), 40, FourierArrangement::kResummed1d), g.value, 1e-12);
}

TEST(PsiIntegral, PermutationSymmetric) {
  EXPECT_NEAR(psi_integral(TorusPoint({0.3, 1.6}, 1.0)).value, psi_integral(TorusPoint({1.6, 0.3}, 1.0)).value,
              1e-13);
}

TEST(PsiIntegral, SingularAtLatticePoints) {
  EXPECT_THROW((void)psi_integral(TorusPoint({0.0, 2.0}, 1.0)), SingularityError);
  EXPECT_THROW((void)psi_integral(TorusPoint({0.0, 0.0, 0.0}, 1.0)), SingularityError);
}

TEST(PsiIntegral, NearLatticeBehavesLikeCoulomb) {
  // n = 3: Psi + 1/(4 pi r) tends to a constant near the origin.
  const auto regular = [](double r) { return psi_integral(TorusPoint({r, 0.0, 0.0}, 1.0)).value + 1.0 / (4.0 * kPi * r); };
  EXPECT_NEAR(regular(1e-3), regular(1e-4), 1e-6);
}

TEST(PsiIntegral, ReportsNonConvergence) {
  QuadratureConfig cfg;
  cfg.max_subdivisions = 1;
  cfg.abs_tol = 1e-15;
  cfg.rel_tol = 1e-15;
  try {
    (void)psi_integral(TorusPoint({1e-4, 0.0, 0.0}, 1.0), cfg);
    FAIL() << "expected AccuracyError";
  } catch (const AccuracyError& e) {
    EXPECT_TRUE(std::isfinite(e.best_estimate()));
    EXPECT_GT(e.error_estimate(), 0.0);
  }
}

TEST(Psi1d, ClosedForm) {
  EXPECT_DOUBLE_EQ(psi_1d(0.0, 1.0).value, -1.0 / 6.0);
  EXPECT_DOUBLE_EQ(psi_1d(1.0, 1.0).value, 1.0 / 12.0);
  EXPECT_DOUBLE_EQ(psi_1d(3.0, 1.0).value, 1.0 / 12.0);
  EXPECT_THROW((void)psi_1d(0.5, 0.0), DomainError);
}

TEST(Psi2dClosed, MatchesIntegral) {
  for (const auto& x : {std::vector<double>{0.3, 1.7}, {1.2, 0.1}, {0.05, 0.02}}) {
    const TorusPoint p(x, 1.0);
    EXPECT_NEAR(psi_2d_closed(p, Normalization::kZeroMean).value, psi_integral(p).value, 1e-12);
  }
}

TEST(Psi2dClosed, UpToConstantHasNoAdditiveConstant) {
  const GreenValue g = psi_2d_closed(TorusPoint({0.4, 0.8}, 1.0), Normalization::kUpToConstant);
  EXPECT_FALSE(g.additive_const.has_value());
  const GreenValue z = psi_2d_closed(TorusPoint({0.4, 0.8}, 1.0), Normalization::kZeroMean);
  ASSERT_TRUE(z.additive_const.has_value());
  EXPECT_NEAR(z.value - g.value, *z.additive_const, 1e-15);
}

TEST(Psi2dClosed, LogarithmicAtOrigin) {
  // Psi - (1/2 pi) log|z| stays bounded as z -> 0.
  std::vector<double> rem;
  for (double r : {1e-2, 1e-4, 1e-6, 1e-8}) {
    rem.push_back(psi_2d_closed(TorusPoint({r, 0.0}, 1.0), Normalization::kZeroMean).value -
                  std::log(r) / (2.0 * kPi));
  }
  EXPECT_NEAR(rem[2], rem[3], 1e-10);
  EXPECT_NEAR(rem[1], rem[3], 1e-6);
}

TEST(Psi2dClosed, Errors) {
  EXPECT_THROW((void)psi_2d_closed(TorusPoint({0.3}, 1.0), Normalization::kZeroMean), UnsupportedError);
  EXPECT_THROW((void)psi_2d_closed(TorusPoint({0.0, 0.0}, 1.0), Normalization::kZeroMean), SingularityError);
}

TEST(PsiFourier, OneDimensionalCubes) {
  EXPECT_NEAR(psi_fourier_partial(TorusPoint({1.0}, 1.0), 1000000, FourierArrangement::kExpandingCubes), 1.0 / 12.0,
              1e-6);
}

TEST(PsiFourier, EmptySum) {
  EXPECT_EQ(psi_fourier_partial(TorusPoint({0.4, 0.2, 0.1}, 1.0), 0, FourierArrangement::kExpandingCubes), 0.0);
  EXPECT_EQ(psi_fourier_partial(TorusPoint({0.4, 0.2}, 1.0), 0, FourierArrangement::kAxisThenQuadrant), 0.0);
}

TEST(PsiFourier, ArrangementsApproachIntegral) {
  const TorusPoint p({0.6, 1.3}, 1.0);
  const double exact = psi_integral(p).value;
  EXPECT_NEAR(psi_fourier_partial(p, 200, FourierArrangement::kExpandingCubes), exact, 2e-3);
  EXPECT_NEAR(psi_fourier_partial(p, 60, FourierArrangement::kAxisThenQuadrant), exact, 2e-3);
  EXPECT_NEAR(psi_fourier_partial(p, 60, FourierArrangement::kResummed1d), exact, 1e-12);
}

TEST(PsiFourier, ResummedRequiresTwoDimensions) {
  EXPECT_THROW((void)psi_fourier_partial(TorusPoint({0.4, 0.2, 0.1}, 1.0), 5, FourierArrangement::kResummed1d),
               UnsupportedError);
  EXPECT_THROW((void)psi_fourier_partial(TorusPoint({0.4}, 1.0), -1, FourierArrangement::kExpandingCubes),
               DomainError);
}

TEST(Epstein, SEqualsTwoGivesPsi) {
  EXPECT_NEAR(epstein_mellin(TorusPoint({1.0, 1.0}, 1.0), 2.0), 4.0 * psi_integral(TorusPoint({1.0, 1.0}, 1.0)).value,
              1e-12);
  EXPECT_NEAR(epstein_mellin(TorusPoint({1.0}, 1.0), 2.0), 2.0 * psi_1d(1.0, 1.0).value, 1e-12);
}

TEST(Epstein, OneDimensionalLargeS) {
  // n = 1, s = 4: -Gamma(2) (a/pi)^4 sum_{k != 0} cos(pi k x)/k^4, and
  // sum_{k>=1} cos(k t)/k^4 = pi^4/90 - pi^2 t^2/12 + pi t^3/12 - t^4/48.
  const double x = 0.6;
  const double t = kPi * x;
  const double series = std::pow(kPi, 4) / 90.0 - kPi * kPi * t * t / 12.0 + kPi * t * t * t / 12.0 -
                        t * t * t * t / 48.0;
  EXPECT_NEAR(epstein_mellin(TorusPoint({x}, 1.0), 4.0), -2.0 * series / std::pow(kPi, 4), 1e-12);
}

TEST(Epstein, Errors) {
  EXPECT_THROW((void)epstein_mellin(TorusPoint({0.5, 0.5}, 1.0), 0.0), DomainError);
  EXPECT_THROW((void)epstein_mellin(TorusPoint({0.0, 0.0}, 1.0), 3.0), SingularityError);
}

}  // namespace
}  // namespace madelung
