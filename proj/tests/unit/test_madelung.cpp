#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "json.hpp"

#include "madelung/errors.hpp"
#include "madelung/madelung.hpp"
#include "madelung/special_functions.hpp"

namespace madelung {
namespace {

constexpr double kNaCl3 = -1.747564594633182190636;
// Lattice-sum value for the body-centred cubic arrangement with unit cell side.
constexpr double kCsCl3CellSide = -2.035361509452595;

double big_k() { return lemniscatic_constants().bigK; }

CrystalSpec cscl_cell_side() { return CrystalSpec::from_length(Family::kCsCl, 3, 1.0, LengthConvention::kCellSide); }

TEST(OriginIntegrand, LemniscaticValues) {
  const double t3 = jacobi_theta_zero(3, 1.0);
  const double t4 = jacobi_theta_zero(4, 1.0);
  EXPECT_NEAR(origin_integrand({Family::kNaCl, 3, 1.0}, 1.0), std::pow(t3 - t4, 3), 1e-15);
  EXPECT_NEAR(origin_integrand({Family::kNaCl, 3, 1.0}, 1.0), 5.16477e-3, 1e-8);
  EXPECT_NEAR(origin_integrand({Family::kCsCl, 2, 1.0}, 1.0), t3 * t3 * (1.0 - std::sqrt(0.5)), 1e-15);
}

TEST(OriginIntegrand, LargeVSmallPositive) {
  for (Family f : {Family::kNaCl, Family::kCsCl}) {
    const double v = origin_integrand({f, 3, 1.0}, 10.0);
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 6.0 * std::exp(-10.0 * std::numbers::pi / 4.0));
  }
  EXPECT_THROW((void)origin_integrand({Family::kNaCl, 3, 1.0}, 0.0), DomainError);
}

TEST(OriginIntegrand, SubtractedFormIsConsistent) {
  const CrystalSpec spec{Family::kNaCl, 3, 1.0};
  for (double v : {0.05, 0.3, 0.9}) {
    EXPECT_NEAR(origin_integrand_subtracted(spec, v), origin_integrand(spec, v) - std::pow(v, -1.5),
                1e-12 * std::pow(v, -1.5));
  }
}

TEST(FinitePart, NaClThreeDimensions) {
  const MadelungResult r = finite_part_subtracted({Family::kNaCl, 3, 1.0});
  EXPECT_NEAR(r.value, kNaCl3, 1e-12);
  EXPECT_LT(r.error_estimate, 1e-10);
  EXPECT_FALSE(r.eps.has_value());
  EXPECT_EQ(r.method, Method::kSubtracted);
}

TEST(FinitePart, EpsilonProcedure) {
  const MadelungResult r = finite_part_epsilon({Family::kNaCl, 3, 1.0}, 1e-6);
  EXPECT_NEAR(r.value, -1.747564594021, 1e-9);
  ASSERT_TRUE(r.eps.has_value());
  EXPECT_EQ(*r.eps, 1e-6);
  EXPECT_NEAR(finite_part_epsilon({Family::kNaCl, 4, 1.0}, 1e-8).value,
              finite_part_subtracted({Family::kNaCl, 4, 1.0}).value, 1e-6);
}

TEST(FinitePart, CsClCellSide) {
  EXPECT_NEAR(finite_part_subtracted(cscl_cell_side()).value, kCsCl3CellSide, 1e-12);
  EXPECT_NEAR(finite_part_epsilon(cscl_cell_side(), 1e-6).value, kCsCl3CellSide, 1e-9);
}

TEST(FinitePart, Scaling) {
  EXPECT_NEAR(finite_part_subtracted({Family::kNaCl, 3, 2.0}).value, kNaCl3 / 2.0, 1e-12);
}

TEST(FinitePart, UnsupportedBelowThreeDimensions) {
  EXPECT_THROW((void)finite_part_epsilon({Family::kNaCl, 2, 1.0}, 1e-6), UnsupportedError);
  EXPECT_THROW((void)finite_part_subtracted({Family::kCsCl, 2, 1.0}), UnsupportedError);
  EXPECT_THROW((void)finite_part_epsilon({Family::kNaCl, 3, 1.0}, 0.0), DomainError);
}

TEST(Binding2d, CsClSites) {
  const CrystalSpec spec{Family::kCsCl, 2, 1.0};
  const BindingPotential origin = binding_potential_2d(spec, 0);
  const BindingPotential centre = binding_potential_2d(spec, 1);
  EXPECT_NEAR(origin.value, 0.0, 1e-13);
  EXPECT_NEAR(centre.value, 2.0 * std::log(big_k()), 1e-13);
  EXPECT_NEAR(centre.value, 1.234771490703, 1e-12);
  EXPECT_NEAR(centre.extrapolated, centre.value, 1e-8);
  EXPECT_NEAR(origin.extrapolated, 0.0, 1e-8);
}

TEST(Binding2d, NaClCounterIonsAgree) {
  const CrystalSpec spec{Family::kNaCl, 2, 1.0};
  const auto sites = charge_sites(spec);
  std::vector<double> counter;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (sites[i].charge < 0) counter.push_back(binding_potential_2d(spec, static_cast<int>(i)).value);
  }
  ASSERT_EQ(counter.size(), 2u);
  EXPECT_NEAR(counter[0], counter[1], 1e-13);
  EXPECT_NEAR(counter[0], 2.0 * std::log(big_k()), 1e-13);
  EXPECT_THROW((void)binding_potential_2d({Family::kNaCl, 3, 1.0}, 0), UnsupportedError);
}

TEST(Madelung2d, LemniscaticValue) {
  const double exact = -std::log(std::tgamma(0.25) * std::tgamma(0.25) / (4.0 * std::sqrt(std::numbers::pi)));
  for (Family f : {Family::kCsCl, Family::kNaCl}) {
    for (double a : {0.5, 1.0, 2.0}) {
      const MadelungResult r = madelung_2d({f, 2, a});
      EXPECT_NEAR(r.value, exact, 1e-13);
      EXPECT_NEAR(r.value, -0.617385745351564, 1e-13);
      ASSERT_TRUE(r.exact_form.has_value());
      EXPECT_EQ(*r.exact_form, kExactForm2d);
    }
  }
  EXPECT_THROW((void)madelung_2d({Family::kNaCl, 3, 1.0}), UnsupportedError);
}

TEST(CellEnergy, Values) {
  const CrystalSpec nacl{Family::kNaCl, 3, 1.0};
  EXPECT_NEAR(cell_energy(nacl, finite_part_subtracted(nacl)), -6.9902584, 1e-7);
  const CrystalSpec cscl = cscl_cell_side();
  const MadelungResult m = finite_part_subtracted(cscl);
  EXPECT_DOUBLE_EQ(cell_energy(cscl, m), m.value);
  const CrystalSpec c2{Family::kCsCl, 2, 1.0};
  EXPECT_NEAR(cell_energy(c2, madelung_2d(c2)), -std::log(big_k()), 1e-12);
  const CrystalSpec n2{Family::kNaCl, 2, 1.0};
  EXPECT_NEAR(cell_energy(n2, madelung_2d(n2)), -2.0 * std::log(big_k()), 1e-12);
  EXPECT_THROW((void)cell_energy(nacl, m), DomainError);
}

TEST(Ambiguous2d, ShiftsWithScale) {
  const CrystalSpec spec{Family::kCsCl, 2, 1.0};
  EXPECT_NEAR(ambiguous_finite_part_2d(spec, 1.0) - ambiguous_finite_part_2d(spec, std::numbers::e), 1.0, 1e-12);
}

TEST(MadelungJson, Schema) {
  const auto j = nlohmann::json::parse(to_json(finite_part_epsilon({Family::kNaCl, 3, 1.0}, 1e-4)));
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["family"], "NaCl");
  EXPECT_EQ(j["method"], "epsilon-limit");
  EXPECT_EQ(j["eps"].get<double>(), 1e-4);
  EXPECT_FALSE(j.contains("exact_form"));
  EXPECT_EQ(parse_method("ewald-oracle"), Method::kEwaldOracle);
  EXPECT_THROW((void)parse_method("brute"), DomainError);
}

}  // namespace
}  // namespace madelung
