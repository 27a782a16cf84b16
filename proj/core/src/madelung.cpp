#include "madelung/madelung.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "json.hpp"

#include "madelung/errors.hpp"

namespace madelung {
namespace {

constexpr double kPi = std::numbers::pi;

void require_finite_part_dim(const CrystalSpec& spec) {
  spec.validate();
  if (spec.n < 3) {
    throw UnsupportedError(
        "the Hadamard finite part is not defined for n < 3: in two dimensions the "
        "regularization log(eps/A) leaves an arbitrary constant -log A (logarithmic "
        "singularity, scale invariance); use the closed-form-2d method");
  }
}

void require_2d(const CrystalSpec& spec, const char* what) {
  spec.validate();
  if (spec.n != 2) throw UnsupportedError(std::string(what) + " requires n = 2");
}

// Both bounds hold for v >= 1, where q = exp(-pi v) <= 0.0433.
double origin_tail(const CrystalSpec& spec, double V) {
  if (V < 1.0) return std::numeric_limits<double>::infinity();
  const double n = spec.n;
  const double q = std::exp(-kPi * V);
  if (spec.family == Family::kNaCl) {
    return 2.0 * std::pow(4.004 * q, n) / (n * kPi);
  }
  return 2.0 * n * std::pow(1.0 + 2.01 * q, n - 1.0) * 4.004 * q / kPi;
}

// Which theta vanishes at the site a (s1, s2): 1 at 0, 2 at a, 4 at ia, 3 at a + ia.
int vanishing_kind(const TorusPoint& site) {
  const bool x = site[0] != 0.0;
  const bool y = site[1] != 0.0;
  if (!x && !y) return 1;
  if (x && !y) return 2;
  if (!x && y) return 4;
  return 3;
}

// Exponents s_k with V = 2 sum_k s_k log|theta_k(pi z / 2a | i)|.
std::array<int, 5> log_weights(Family family) {
  if (family == Family::kCsCl) return {0, -1, 0, +1, 0};
  return {0, -1, +1, -1, +1};
}

double richardson(double g4, double g5, double g6, double& error) {
  const double r45 = (10.0 * g5 - g4) / 9.0;
  const double r56 = (10.0 * g6 - g5) / 9.0;
  error = std::abs(r56 - r45);
  return (100.0 * r56 - r45) / 99.0;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kEpsilonLimit: return "epsilon-limit";
    case Method::kSubtracted: return "subtracted";
    case Method::kClosedForm2d: return "closed-form-2d";
    case Method::kEwaldOracle: return "ewald-oracle";
  }
  return "subtracted";
}

Method parse_method(std::string_view name) {
  std::string s(name);
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "epsilon-limit") return Method::kEpsilonLimit;
  if (s == "subtracted") return Method::kSubtracted;
  if (s == "closed-form-2d") return Method::kClosedForm2d;
  if (s == "ewald-oracle" || s == "ewald") return Method::kEwaldOracle;
  throw DomainError("unknown method '" + std::string(name) + "'");
}

std::string to_json(const MadelungResult& result) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["family"] = to_string(result.spec.family);
  j["n"] = result.spec.n;
  j["a"] = result.spec.a;
  j["convention"] = to_string(result.spec.convention);
  j["method"] = to_string(result.method);
  j["value"] = result.value;
  if (result.eps) {
    j["eps"] = *result.eps;
  } else {
    j["eps"] = nullptr;
  }
  j["error_estimate"] = result.error_estimate;
  if (result.exact_form) j["exact_form"] = *result.exact_form;
  return j.dump(2);
}

double origin_integrand(const CrystalSpec& spec, double v) {
  spec.validate();
  if (!(v > 0.0)) throw DomainError("origin_integrand requires v > 0");
  const double n = spec.n;
  if (spec.family == Family::kNaCl) return std::pow(theta3_minus_theta4_zero(v), n);
  if (v >= 1.0) {
    const double up = n * std::log1p(theta3_minus_one(0.0, v));
    const double down = n * std::log1p(theta3_minus_one(kPi / 2.0, v));
    return std::expm1(up) - std::expm1(down);
  }
  return std::pow(jacobi_theta_zero(3, v), n) - std::pow(jacobi_theta_zero(4, v), n);
}

double origin_integrand_subtracted(const CrystalSpec& spec, double v) {
  spec.validate();
  if (!(v > 0.0)) throw DomainError("origin_integrand requires v > 0");
  const double n = spec.n;
  if (v >= 1.0) return origin_integrand(spec, v) - std::pow(v, -n / 2.0);
  // theta_3(0|iv) = v^(-1/2) theta_3(0|i/v), theta_4(0|iv) = v^(-1/2) theta_2(0|i/v).
  const double vt = 1.0 / v;
  if (kPi * vt / 4.0 > 700.0) return 0.0;  // theta_2(0|i/v) and theta_3 - 1 underflow
  const double d3 = theta3_minus_one(0.0, vt);
  const double t2 = jacobi_theta_zero(2, vt);
  const double scale = std::pow(v, -n / 2.0);
  if (spec.family == Family::kNaCl) return scale * std::expm1(n * std::log1p(d3 - t2));
  return scale * (std::expm1(n * std::log1p(d3)) - std::pow(t2, n));
}

double finite_part_prefactor(const CrystalSpec& spec) {
  spec.validate();
  return 1.0 / std::pow(2.0 * spec.a, spec.n - 2.0);
}

MadelungResult finite_part_subtracted(const CrystalSpec& spec, const QuadratureConfig& cfg) {
  require_finite_part_dim(spec);
  cfg.validate();
  const double pref = finite_part_prefactor(spec);
  const double n = spec.n;
  const Integrand g = [&spec](double v) {
    return v < 1.0 ? origin_integrand_subtracted(spec, v) : origin_integrand(spec, v);
  };
  QuadratureConfig qc = cfg;
  qc.eps_lower = 0.0;
  qc.split_v = 1.0;
  qc.abs_tol = cfg.abs_tol / pref;
  const QuadratureResult r = integrate_half_line(
      g, qc, [&spec](double V) { return origin_tail(spec, V); }, {0.01, 0.1});

  MadelungResult out;
  out.value = pref * (r.value - 1.0 / (n / 2.0 - 1.0));
  out.method = Method::kSubtracted;
  out.error_estimate = pref * r.error;
  out.spec = spec;
  if (!r.converged) {
    throw AccuracyError("finite_part_subtracted did not converge", out.value, out.error_estimate);
  }
  return out;
}

namespace {

struct EpsilonRun {
  double value;
  double error;
  bool converged;
};

EpsilonRun epsilon_run(const CrystalSpec& spec, double eps, const QuadratureConfig& cfg) {
  const double pref = finite_part_prefactor(spec);
  const double n = spec.n;
  const double counter = std::pow(eps, 1.0 - n / 2.0) / (n / 2.0 - 1.0);
  const Integrand f = [&spec](double v) { return origin_integrand(spec, v); };
  QuadratureConfig qc = cfg;
  qc.eps_lower = eps;
  qc.split_v = 1.0;
  // The integral is of size ~counter, so absolute accuracy below a few ulps
  // of it is not reachable.
  qc.abs_tol = std::max(cfg.abs_tol / pref, 1e-13 * counter);
  qc.rel_tol = 1e-15;
  std::vector<double> extra;
  for (double b = 1e-4; b > eps; b /= 10.0) extra.push_back(b);
  extra.push_back(0.01);
  extra.push_back(0.1);
  const QuadratureResult r =
      integrate_half_line(f, qc, [&spec](double V) { return origin_tail(spec, V); }, extra);
  return {pref * (r.value - counter), pref * r.error, r.converged};
}

}  // namespace

MadelungResult finite_part_epsilon(const CrystalSpec& spec, double eps, const QuadratureConfig& cfg) {
  require_finite_part_dim(spec);
  cfg.validate();
  if (!(eps > 0.0 && eps <= 0.1)) throw DomainError("finite_part_epsilon requires eps in (0, 0.1]");
  const EpsilonRun main = epsilon_run(spec, eps, cfg);
  const EpsilonRun refined = epsilon_run(spec, eps / 4.0, cfg);
  MadelungResult out;
  out.value = main.value;
  out.method = Method::kEpsilonLimit;
  out.eps = eps;
  out.error_estimate = main.error + std::abs(main.value - refined.value);
  out.spec = spec;
  if (!main.converged) {
    throw AccuracyError("finite_part_epsilon did not converge", out.value, out.error_estimate);
  }
  return out;
}

BindingPotential binding_potential_2d(const CrystalSpec& spec, int site_index) {
  require_2d(spec, "binding_potential_2d");
  const auto sites = charge_sites(spec);
  if (site_index < 0 || site_index >= static_cast<int>(sites.size())) {
    throw DomainError("site index out of range");
  }
  const ChargeSite& s = sites[static_cast<std::size_t>(site_index)];
  const double a = spec.a;
  const double q = s.charge;
  const double dnn = spec.nearest_neighbour();
  const double horizon = q > 0 ? dnn / lemniscatic_constants().bigK : dnn;

  // Closed form: near the zero of theta_j, log|theta_j(w)| = log(|theta_j'| pi r / 2a) + O(r).
  const std::complex<double> ws(kPi * s.site[0] / (2.0 * a), kPi * s.site[1] / (2.0 * a));
  const int j = vanishing_kind(s.site);
  const auto weights = log_weights(spec.family);
  double c = 0.0;
  for (int k = 1; k <= 4; ++k) {
    if (weights[static_cast<std::size_t>(k)] == 0) continue;
    const double w = weights[static_cast<std::size_t>(k)];
    if (k == j) {
      c += w * std::log(std::abs(jacobi_theta_prime(k, {ws, 1.0, kDefaultThetaTol})) * kPi / (2.0 * a));
    } else {
      c += w * std::log(std::abs(jacobi_theta(k, {ws, 1.0, kDefaultThetaTol})));
    }
  }

  BindingPotential out{s.site, s.charge, 2.0 * c - 2.0 * q * std::log(horizon), horizon, 0.0, 0.0};

  constexpr double kAngle = 0.3;
  std::array<double, 3> g{};
  for (int k = 4; k <= 6; ++k) {
    const double r = std::pow(10.0, -k) * a;
    const TorusPoint x({s.site[0] + r * std::cos(kAngle), s.site[1] + r * std::sin(kAngle)}, a);
    g[static_cast<std::size_t>(k - 4)] = potential_2d_closed(spec, x) + 2.0 * q * std::log(r / horizon);
  }
  out.extrapolated = richardson(g[0], g[1], g[2], out.extrapolation_error);
  out.extrapolation_error = std::max(out.extrapolation_error, std::abs(out.extrapolated - out.value));
  return out;
}

MadelungResult madelung_2d(const CrystalSpec& spec) {
  require_2d(spec, "madelung_2d");
  const auto sites = charge_sites(spec);
  double u = 0.0;
  double err = 0.0;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const BindingPotential b = binding_potential_2d(spec, static_cast<int>(i));
    u += 0.5 * b.charge * b.value;
    err = std::max(err, b.extrapolation_error);
  }
  MadelungResult out;
  out.value = u / (static_cast<double>(sites.size()) / 2.0);
  out.method = Method::kClosedForm2d;
  out.error_estimate = err;
  out.spec = spec;
  out.exact_form = std::string(kExactForm2d);
  return out;
}

double cell_energy(const CrystalSpec& spec, const MadelungResult& m) {
  spec.validate();
  if (!(m.spec == spec)) throw DomainError("Madelung result belongs to a different crystal");
  if (spec.n == 2) {
    const auto sites = charge_sites(spec);
    double u = 0.0;
    for (std::size_t i = 0; i < sites.size(); ++i) {
      const BindingPotential b = binding_potential_2d(spec, static_cast<int>(i));
      u += 0.5 * b.charge * b.value;
    }
    return u;
  }
  if (spec.n < 2) throw UnsupportedError("cell energy is defined for n >= 2");
  if (spec.family == Family::kNaCl) return std::ldexp(m.value, spec.n - 1);
  return m.value;
}

double ambiguous_finite_part_2d(const CrystalSpec& spec, double A, const QuadratureConfig& cfg) {
  require_2d(spec, "ambiguous_finite_part_2d");
  cfg.validate();
  if (!(A > 0.0) || !std::isfinite(A)) throw DomainError("ambiguous_finite_part_2d requires A > 0");
  const Integrand g = [&spec](double v) {
    return v < 1.0 ? origin_integrand_subtracted(spec, v) : origin_integrand(spec, v);
  };
  QuadratureConfig qc = cfg;
  qc.eps_lower = 0.0;
  qc.split_v = 1.0;
  const QuadratureResult r = integrate_half_line(
      g, qc, [&spec](double V) { return origin_tail(spec, V); }, {0.01, 0.1});
  if (!r.converged) throw AccuracyError("ambiguous_finite_part_2d did not converge", r.value, r.error);
  return r.value - std::log(A);
}

}  // namespace madelung
