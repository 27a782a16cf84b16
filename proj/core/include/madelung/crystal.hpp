#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "madelung/lattice_theta.hpp"
#include "madelung/quadrature.hpp"

namespace madelung {

enum class Family { kNaCl, kCsCl };

// How a user-supplied length maps to the half-period a.
enum class LengthConvention {
  kHalfPeriod,        // length = a
  kCellSide,          // length = 2a
  kNearestNeighbour,  // length = d_nn; NaCl a = d_nn, CsCl a = d_nn/sqrt(n)
};

[[nodiscard]] std::string_view to_string(Family family);
[[nodiscard]] std::string_view to_string(LengthConvention convention);
// Case-insensitive. Throws DomainError on unknown names.
[[nodiscard]] Family parse_family(std::string_view name);
[[nodiscard]] LengthConvention parse_convention(std::string_view name);

struct CrystalSpec {
  Family family = Family::kNaCl;
  int n = 3;
  double a = 1.0;
  // Convention the length was given in; a is always the resolved half-period.
  LengthConvention convention = LengthConvention::kHalfPeriod;

  [[nodiscard]] static CrystalSpec from_length(Family family, int n, double length,
                                               LengthConvention convention);

  // Distance between an ion and its nearest counter-ion.
  [[nodiscard]] double nearest_neighbour() const;
  // The length expressed in this crystal's own convention.
  [[nodiscard]] double length() const;
  void validate() const;

  friend bool operator==(const CrystalSpec&, const CrystalSpec&) = default;
};

struct ChargeSite {
  TorusPoint site;
  int charge;
};

// NaCl: charge (-1)^|k| at a k, k in {0,1}^n. CsCl: +1 at 0, -1 at a(1,...,1).
[[nodiscard]] std::vector<ChargeSite> charge_sites(const CrystalSpec& spec);

// Distance within which a point counts as sitting on a charge.
inline constexpr double kSiteProximity = 1e-9;

// Index of the charge site within kSiteProximity * a of x, or -1.
[[nodiscard]] int site_at(const CrystalSpec& spec, const TorusPoint& x);

// Zero-mean potential V(x) = -4 pi sum_i q_i Psi(x - x_i) (Gaussian units).
// Throws SingularityError on a site, AccuracyError when a Psi quadrature fails.
[[nodiscard]] double potential_integral(const CrystalSpec& spec, const TorusPoint& x,
                                        const QuadratureConfig& cfg = {});

// n = 2 closed forms with w = pi z / 2a, tau = i:
//   NaCl  V = log |theta_2 theta_4 / (theta_1 theta_3)|^2
//   CsCl  V = log |theta_3 / theta_1|^2
[[nodiscard]] double potential_2d_closed(const CrystalSpec& spec, const TorusPoint& x);

enum class SampleMask : std::uint8_t { kRegular, kSingularSite, kFailed };

[[nodiscard]] std::string_view to_string(SampleMask mask);

// V sampled at x = 2a i / resolution (i in [0, resolution)^n), first axis
// fastest. Singular samples hold NaN; failed samples hold the best estimate.
struct PotentialField {
  CrystalSpec spec;
  int resolution = 0;
  std::vector<double> samples;
  std::vector<SampleMask> mask;

  [[nodiscard]] std::size_t size() const noexcept { return samples.size(); }
  [[nodiscard]] std::vector<double> point(std::size_t index) const;
  // Mean over regular samples.
  [[nodiscard]] double regular_mean() const;

  friend bool operator==(const PotentialField&, const PotentialField&);
};

// Closed form for n = 2, potential_integral otherwise. resolution >= 4.
[[nodiscard]] PotentialField field_grid(const CrystalSpec& spec, int resolution,
                                        const QuadratureConfig& cfg = {});

// CSV columns x1..xn,V,mask; values in shortest round-trip decimal.
void write_csv(const PotentialField& field, std::ostream& out);
[[nodiscard]] PotentialField read_csv(std::istream& in, const CrystalSpec& spec);

// JSON envelope {schema: 1, family, n, a, convention, resolution, samples, mask}.
[[nodiscard]] std::string to_json(const PotentialField& field);
[[nodiscard]] PotentialField field_from_json(std::string_view text);

}  // namespace madelung
