#include "madelung/crystal.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "madelung/errors.hpp"
#include "madelung/format.hpp"
#include "madelung/green.hpp"
#include "madelung/parallel.hpp"

namespace madelung {
namespace {

constexpr double kPi = std::numbers::pi;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double log_abs_theta(int kind, std::complex<double> w) {
  return std::log(std::abs(jacobi_theta(kind, {w, 1.0, kDefaultThetaTol})));
}

SampleMask parse_mask(std::string_view s) {
  if (s == "regular") return SampleMask::kRegular;
  if (s == "singular-site") return SampleMask::kSingularSite;
  if (s == "failed") return SampleMask::kFailed;
  throw DomainError("unknown sample mask '" + std::string(s) + "'");
}

std::size_t grid_size(int n, int resolution) {
  std::size_t total = 1;
  for (int j = 0; j < n; ++j) total *= static_cast<std::size_t>(resolution);
  return total;
}

}  // namespace

std::string_view to_string(Family family) {
  return family == Family::kNaCl ? "NaCl" : "CsCl";
}

std::string_view to_string(LengthConvention convention) {
  switch (convention) {
    case LengthConvention::kHalfPeriod: return "half-period";
    case LengthConvention::kCellSide: return "cell-side";
    case LengthConvention::kNearestNeighbour: return "nearest-neighbour";
  }
  return "half-period";
}

Family parse_family(std::string_view name) {
  const std::string s = lower(name);
  if (s == "nacl") return Family::kNaCl;
  if (s == "cscl") return Family::kCsCl;
  throw DomainError("unknown crystal family '" + std::string(name) + "' (expected nacl or cscl)");
}

LengthConvention parse_convention(std::string_view name) {
  const std::string s = lower(name);
  if (s == "half-period") return LengthConvention::kHalfPeriod;
  if (s == "cell-side") return LengthConvention::kCellSide;
  if (s == "nearest-neighbour" || s == "nearest-neighbor") return LengthConvention::kNearestNeighbour;
  throw DomainError("unknown length convention '" + std::string(name) + "'");
}

CrystalSpec CrystalSpec::from_length(Family family, int n, double length,
                                     LengthConvention convention) {
  if (n < 1) throw DomainError("crystal dimension must be >= 1");
  if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("crystal length must be > 0");
  CrystalSpec spec;
  spec.family = family;
  spec.n = n;
  spec.convention = convention;
  switch (convention) {
    case LengthConvention::kHalfPeriod: spec.a = length; break;
    case LengthConvention::kCellSide: spec.a = length / 2.0; break;
    case LengthConvention::kNearestNeighbour:
      spec.a = family == Family::kNaCl ? length : length / std::sqrt(static_cast<double>(n));
      break;
  }
  return spec;
}

double CrystalSpec::nearest_neighbour() const {
  return family == Family::kNaCl ? a : a * std::sqrt(static_cast<double>(n));
}

double CrystalSpec::length() const {
  switch (convention) {
    case LengthConvention::kHalfPeriod: return a;
    case LengthConvention::kCellSide: return 2.0 * a;
    case LengthConvention::kNearestNeighbour: return nearest_neighbour();
  }
  return a;
}

void CrystalSpec::validate() const {
  if (n < 1) throw DomainError("crystal dimension must be >= 1");
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("crystal half-period a must be > 0");
}

std::vector<ChargeSite> charge_sites(const CrystalSpec& spec) {
  spec.validate();
  std::vector<ChargeSite> sites;
  const auto n = static_cast<std::size_t>(spec.n);
  if (spec.family == Family::kCsCl) {
    sites.push_back({TorusPoint(std::vector<double>(n, 0.0), spec.a), +1});
    sites.push_back({TorusPoint(std::vector<double>(n, spec.a), spec.a), -1});
    return sites;
  }
  if (spec.n > 20) throw DomainError("NaCl site enumeration limited to n <= 20");
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<double> x(n);
    int parity = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const bool bit = (mask >> j) & 1u;
      x[j] = bit ? spec.a : 0.0;
      parity ^= static_cast<int>(bit);
    }
    sites.push_back({TorusPoint(std::move(x), spec.a), parity ? -1 : +1});
  }
  return sites;
}

int site_at(const CrystalSpec& spec, const TorusPoint& x) {
  const auto sites = charge_sites(spec);
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (x.minus(sites[i].site).distance_to_lattice() <= kSiteProximity * spec.a) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

double potential_integral(const CrystalSpec& spec, const TorusPoint& x, const QuadratureConfig& cfg) {
  spec.validate();
  if (x.dim() != spec.n || x.a() != spec.a) throw DomainError("point does not lie on the crystal torus");
  if (site_at(spec, x) >= 0) throw SingularityError("potential is singular at a charge site");
  double sum = 0.0;
  for (const ChargeSite& s : charge_sites(spec)) {
    sum += s.charge * psi_integral(x.minus(s.site), cfg).value;
  }
  return -4.0 * kPi * sum;
}

double potential_2d_closed(const CrystalSpec& spec, const TorusPoint& x) {
  spec.validate();
  if (spec.n != 2) throw UnsupportedError("closed-form potential exists for n = 2 only");
  if (x.dim() != 2 || x.a() != spec.a) throw DomainError("point does not lie on the crystal torus");
  if (site_at(spec, x) >= 0) throw SingularityError("potential is singular at a charge site");
  const std::complex<double> w(kPi * x[0] / (2.0 * spec.a), kPi * x[1] / (2.0 * spec.a));
  if (spec.family == Family::kCsCl) {
    return 2.0 * (log_abs_theta(3, w) - log_abs_theta(1, w));
  }
  return 2.0 * (log_abs_theta(2, w) + log_abs_theta(4, w) - log_abs_theta(1, w) - log_abs_theta(3, w));
}

std::string_view to_string(SampleMask mask) {
  switch (mask) {
    case SampleMask::kRegular: return "regular";
    case SampleMask::kSingularSite: return "singular-site";
    case SampleMask::kFailed: return "failed";
  }
  return "regular";
}

std::vector<double> PotentialField::point(std::size_t index) const {
  std::vector<double> x(static_cast<std::size_t>(spec.n));
  const auto r = static_cast<std::size_t>(resolution);
  for (auto& c : x) {
    c = 2.0 * spec.a * static_cast<double>(index % r) / resolution;
    index /= r;
  }
  return x;
}

double PotentialField::regular_mean() const {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (mask[i] == SampleMask::kRegular) {
      sum += samples[i];
      ++count;
    }
  }
  return count == 0 ? std::numeric_limits<double>::quiet_NaN() : sum / static_cast<double>(count);
}

bool operator==(const PotentialField& x, const PotentialField& y) {
  if (!(x.spec == y.spec) || x.resolution != y.resolution || x.mask != y.mask) return false;
  if (x.samples.size() != y.samples.size()) return false;
  for (std::size_t i = 0; i < x.samples.size(); ++i) {
    const double p = x.samples[i];
    const double q = y.samples[i];
    if (!(p == q || (std::isnan(p) && std::isnan(q)))) return false;
  }
  return true;
}

PotentialField field_grid(const CrystalSpec& spec, int resolution, const QuadratureConfig& cfg) {
  spec.validate();
  if (resolution < 4) throw DomainError("field_grid requires resolution >= 4");
  PotentialField field;
  field.spec = spec;
  field.resolution = resolution;
  const std::size_t total = grid_size(spec.n, resolution);
  field.samples.assign(total, 0.0);
  field.mask.assign(total, SampleMask::kRegular);
  parallel_for(total, [&](std::size_t i) {
    const TorusPoint x(field.point(i), spec.a);
    if (site_at(spec, x) >= 0) {
      field.samples[i] = std::numeric_limits<double>::quiet_NaN();
      field.mask[i] = SampleMask::kSingularSite;
      return;
    }
    try {
      field.samples[i] = spec.n == 2 ? potential_2d_closed(spec, x) : potential_integral(spec, x, cfg);
    } catch (const AccuracyError& e) {
      field.samples[i] = e.best_estimate();
      field.mask[i] = SampleMask::kFailed;
    }
  });
  return field;
}

void write_csv(const PotentialField& field, std::ostream& out) {
  for (int j = 1; j <= field.spec.n; ++j) out << 'x' << j << ',';
  out << "V,mask\n";
  for (std::size_t i = 0; i < field.size(); ++i) {
    for (double c : field.point(i)) out << format_double(c) << ',';
    out << format_double(field.samples[i]) << ',' << to_string(field.mask[i]) << '\n';
  }
}

PotentialField read_csv(std::istream& in, const CrystalSpec& spec) {
  PotentialField field;
  field.spec = spec;
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty potential CSV");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != static_cast<std::size_t>(spec.n) + 2) {
      throw DomainError("potential CSV row has the wrong number of columns");
    }
    field.samples.push_back(parse_double(cells[cells.size() - 2]));
    field.mask.push_back(parse_mask(cells.back()));
  }
  const double root = std::round(std::pow(static_cast<double>(field.samples.size()), 1.0 / spec.n));
  field.resolution = static_cast<int>(root);
  if (grid_size(spec.n, field.resolution) != field.samples.size()) {
    throw DomainError("potential CSV does not hold a full grid");
  }
  return field;
}

std::string to_json(const PotentialField& field) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["family"] = to_string(field.spec.family);
  j["n"] = field.spec.n;
  j["a"] = field.spec.a;
  j["convention"] = to_string(field.spec.convention);
  j["resolution"] = field.resolution;
  auto samples = nlohmann::json::array();
  auto mask = nlohmann::json::array();
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (std::isnan(field.samples[i])) {
      samples.push_back(nullptr);
    } else {
      samples.push_back(field.samples[i]);
    }
    mask.push_back(to_string(field.mask[i]));
  }
  j["samples"] = std::move(samples);
  j["mask"] = std::move(mask);
  return j.dump(2);
}

PotentialField field_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed potential JSON: ") + e.what());
  }
  if (j.value("schema", 0) != 1) throw DomainError("unsupported potential JSON schema");
  PotentialField field;
  try {
    field.spec.family = parse_family(j.at("family").get<std::string>());
    field.spec.n = j.at("n").get<int>();
    field.spec.a = j.at("a").get<double>();
    field.spec.convention = parse_convention(j.at("convention").get<std::string>());
    field.resolution = j.at("resolution").get<int>();
    for (const auto& s : j.at("samples")) {
      field.samples.push_back(s.is_null() ? std::numeric_limits<double>::quiet_NaN() : s.get<double>());
    }
    for (const auto& m : j.at("mask")) field.mask.push_back(parse_mask(m.get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed potential JSON: ") + e.what());
  }
  if (field.samples.size() != field.mask.size() ||
      field.samples.size() != grid_size(field.spec.n, field.resolution)) {
    throw DomainError("potential JSON sample count does not match the grid");
  }
  return field;
}

}  // namespace madelung
