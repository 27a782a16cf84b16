#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "madelung/crystal.hpp"
#include "madelung/errors.hpp"
#include "madelung/special_functions.hpp"

namespace madelung {
namespace {

TEST(CrystalSpec, LengthConventions) {
  const CrystalSpec cell = CrystalSpec::from_length(Family::kCsCl, 3, 1.0, LengthConvention::kCellSide);
  EXPECT_DOUBLE_EQ(cell.a, 0.5);
  EXPECT_DOUBLE_EQ(cell.length(), 1.0);
  const CrystalSpec nn = CrystalSpec::from_length(Family::kCsCl, 3, 1.0, LengthConvention::kNearestNeighbour);
  EXPECT_DOUBLE_EQ(nn.nearest_neighbour(), 1.0);
  EXPECT_NEAR(nn.a, 1.0 / std::sqrt(3.0), 1e-15);
  const CrystalSpec nacl = CrystalSpec::from_length(Family::kNaCl, 3, 2.0, LengthConvention::kNearestNeighbour);
  EXPECT_DOUBLE_EQ(nacl.a, 2.0);
  EXPECT_THROW((void)CrystalSpec::from_length(Family::kNaCl, 0, 1.0, LengthConvention::kHalfPeriod), DomainError);
  EXPECT_THROW((void)CrystalSpec::from_length(Family::kNaCl, 3, -1.0, LengthConvention::kHalfPeriod), DomainError);
}

TEST(CrystalSpec, ParsesNames) {
  EXPECT_EQ(parse_family("NaCl"), Family::kNaCl);
  EXPECT_EQ(parse_family("cscl"), Family::kCsCl);
  EXPECT_EQ(parse_convention("nearest-neighbour"), LengthConvention::kNearestNeighbour);
  EXPECT_THROW((void)parse_family("kcl"), DomainError);
}

TEST(ChargeSites, PlanarNaCl) {
  const auto sites = charge_sites({Family::kNaCl, 2, 1.0});
  ASSERT_EQ(sites.size(), 4u);
  int total = 0;
  for (const ChargeSite& s : sites) {
    const int parity = static_cast<int>(std::lround(s.site[0] + s.site[1])) % 2;
    EXPECT_EQ(s.charge, parity == 0 ? 1 : -1);
    total += s.charge;
  }
  EXPECT_EQ(total, 0);
}

TEST(ChargeSites, BodyCentredCsCl) {
  const auto sites = charge_sites({Family::kCsCl, 3, 1.0});
  ASSERT_EQ(sites.size(), 2u);
  EXPECT_EQ(sites[0].charge, 1);
  EXPECT_TRUE(sites[0].site.is_lattice_point());
  EXPECT_EQ(sites[1].charge, -1);
  for (int j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(sites[1].site[j], 1.0);
}

TEST(Potential, SymmetryZeros) {
  const CrystalSpec nacl{Family::kNaCl, 2, 1.0};
  for (double x2 : {0.1, 0.7, 1.3}) EXPECT_NEAR(potential_integral(nacl, TorusPoint({0.5, x2}, 1.0)), 0.0, 1e-12);
  EXPECT_NEAR(potential_integral({Family::kCsCl, 2, 1.0}, TorusPoint({0.5, 0.5}, 1.0)), 0.0, 1e-12);
}

TEST(Potential, ClosedFormMatchesIntegral) {
  const CrystalSpec nacl{Family::kNaCl, 2, 1.0};
  const TorusPoint x({0.25, 0.25}, 1.0);
  EXPECT_NEAR(potential_2d_closed(nacl, x), potential_integral(nacl, x), 1e-9);
}

TEST(Potential, CsClNearOrigin) {
  const CrystalSpec spec{Family::kCsCl, 2, 1.0};
  const double K = lemniscatic_constants().bigK;
  const double r = 1e-6;
  const double v = potential_2d_closed(spec, TorusPoint({r * 0.6, r * 0.8}, 1.0));
  EXPECT_NEAR(v + 2.0 * std::log(K * r / std::sqrt(2.0)), 0.0, 1e-5);
}

TEST(Potential, CsClNearCounterIon) {
  const CrystalSpec spec{Family::kCsCl, 2, 1.0};
  const double K = lemniscatic_constants().bigK;
  const double r = 1e-6;
  const double v = potential_2d_closed(spec, TorusPoint({1.0 + r, 1.0}, 1.0));
  EXPECT_NEAR(v - 2.0 * std::log(r / std::sqrt(2.0)), 2.0 * std::log(K), 1e-5);
}

TEST(Potential, Errors) {
  EXPECT_THROW((void)potential_2d_closed({Family::kNaCl, 3, 1.0}, TorusPoint({0.3, 0.2, 0.1}, 1.0)),
               UnsupportedError);
  EXPECT_THROW((void)potential_2d_closed({Family::kNaCl, 2, 1.0}, TorusPoint({1.0, 0.0}, 1.0)), SingularityError);
  EXPECT_THROW((void)potential_integral({Family::kCsCl, 3, 1.0}, TorusPoint({1.0, 1.0, 1.0}, 1.0)),
               SingularityError);
}

TEST(FieldGrid, PlanarNaCl) {
  const PotentialField f = field_grid({Family::kNaCl, 2, 1.0}, 8);
  ASSERT_EQ(f.size(), 64u);
  int singular = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.mask[i] == SampleMask::kSingularSite) {
      ++singular;
      EXPECT_TRUE(std::isnan(f.samples[i]));
    }
  }
  EXPECT_EQ(singular, 4);
  EXPECT_LT(std::abs(f.regular_mean()), 0.05);
  const auto p = f.point(9);
  EXPECT_DOUBLE_EQ(p[0], 0.25);
  EXPECT_DOUBLE_EQ(p[1], 0.25);
}

TEST(FieldGrid, CsClCube) {
  const PotentialField f = field_grid({Family::kCsCl, 3, 1.0}, 4);
  ASSERT_EQ(f.size(), 64u);
  EXPECT_EQ(std::count(f.mask.begin(), f.mask.end(), SampleMask::kSingularSite), 2);
  EXPECT_THROW((void)field_grid({Family::kCsCl, 3, 1.0}, 3), DomainError);
}

TEST(FieldGrid, CsvAndJsonRoundTrip) {
  const CrystalSpec spec{Family::kCsCl, 2, 0.75};
  const PotentialField f = field_grid(spec, 6);
  std::stringstream csv;
  write_csv(f, csv);
  EXPECT_EQ(csv.str().substr(0, 14), "x1,x2,V,mask\n0");
  EXPECT_TRUE(read_csv(csv, spec) == f);
  EXPECT_TRUE(field_from_json(to_json(f)) == f);
}

}  // namespace
}  // namespace madelung
