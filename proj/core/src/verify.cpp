#include "madelung/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "json.hpp"

#include "madelung/crystal.hpp"
#include "madelung/errors.hpp"
#include "madelung/format.hpp"
#include "madelung/green.hpp"
#include "madelung/lattice_sums.hpp"
#include "madelung/lattice_theta.hpp"
#include "madelung/madelung.hpp"
#include "madelung/parallel.hpp"
#include "madelung/special_functions.hpp"

namespace madelung {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaClReference = -1.747564594633182190636;

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double rel(double x, double ref) { return std::abs(x - ref) / std::max(std::abs(ref), 1e-300); }

CheckResult result(bool passed, double measured, double threshold, std::string detail = {}) {
  CheckResult r;
  r.passed = passed;
  r.measured = measured;
  r.threshold = threshold;
  r.detail = std::move(detail);
  return r;
}

CheckResult at_most(double measured, double threshold, std::string detail = {}) {
  return result(measured <= threshold, measured, threshold, std::move(detail));
}

CheckResult all_of(std::vector<CheckResult> parts) {
  CheckResult out = result(true, 0.0, 0.0);
  std::string detail;
  for (const CheckResult& p : parts) {
    out.passed = out.passed && p.passed;
    if (p.threshold > 0.0 && p.measured / p.threshold >= out.measured / std::max(out.threshold, 1e-300)) {
      out.measured = p.measured;
      out.threshold = p.threshold;
    }
    if (!detail.empty()) detail += "; ";
    detail += p.detail;
  }
  out.detail = detail;
  return out;
}

// Point at least min_dist from every lattice point.
std::vector<double> random_point(Rng& rng, int n, double a, double min_dist) {
  while (true) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& c : x) c = uniform(rng, 0.0, 2.0 * a);
    if (TorusPoint(x, a).distance_to_lattice() >= min_dist) return x;
  }
}

double min_site_distance(const CrystalSpec& spec, const TorusPoint& x) {
  double d = 1e300;
  for (const ChargeSite& s : charge_sites(spec)) d = std::min(d, x.minus(s.site).distance_to_lattice());
  return d;
}

std::vector<double> random_off_site(Rng& rng, const CrystalSpec& spec, double min_dist) {
  while (true) {
    std::vector<double> x(static_cast<std::size_t>(spec.n));
    for (double& c : x) c = uniform(rng, 0.0, 2.0 * spec.a);
    if (min_site_distance(spec, TorusPoint(x, spec.a)) >= min_dist) return x;
  }
}

// Central-difference Laplacian.
double fd_laplacian(const std::function<double(const std::vector<double>&)>& f,
                    const std::vector<double>& x, double h) {
  const double center = f(x);
  double sum = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    auto p = x;
    auto m = x;
    p[j] += h;
    m[j] -= h;
    sum += (f(p) - 2.0 * center + f(m)) / (h * h);
  }
  return sum;
}

// Two-level O(h^2) check: error(h) / error(h/2) in [3.5, 4.5].
CheckResult second_order(double err_h, double err_h2, const std::string& what) {
  const double ratio = err_h / err_h2;
  std::ostringstream d;
  d << what << ": err(h)=" << format_double(err_h) << " err(h/2)=" << format_double(err_h2)
    << " ratio=" << format_double(ratio);
  return result(ratio >= 3.5 && ratio <= 4.5, ratio, 4.5, d.str());
}

QuadratureConfig tight() {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-14;
  cfg.rel_tol = 1e-13;
  return cfg;
}

// Direct q-series theta_3(z | i v) in long double, no modular transformation.
long double direct_theta3(double z, double v) {
  const long double q = std::exp(-static_cast<long double>(kPi) * v);
  long double sum = 1.0L;
  for (int k = 1; k < 100000; ++k) {
    const long double term = 2.0L * std::pow(q, static_cast<long double>(k) * k);
    if (term < 1e-22L) break;
    sum += term * std::cos(2.0L * k * z);
  }
  return sum;
}

// Midpoint sums of f over an N^n grid offset by 1/3 of a step.
double offset_grid_mean(int n, double a, int N, const std::function<double(const std::vector<double>&)>& f) {
  std::size_t total = 1;
  for (int j = 0; j < n; ++j) total *= static_cast<std::size_t>(N);
  std::vector<double> values(total);
  parallel_for(total, [&](std::size_t i) {
    std::vector<double> x(static_cast<std::size_t>(n));
    std::size_t idx = i;
    for (auto& c : x) {
      c = 2.0 * a * (static_cast<double>(idx % static_cast<std::size_t>(N)) + 1.0 / 3.0) / N;
      idx /= static_cast<std::size_t>(N);
    }
    values[i] = f(x);
  });
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(total);
}

// ----------------------------------------------------------------------------
// special_functions

CheckResult sf_lemniscatic() {
  const auto& c = lemniscatic_constants();
  const double gq = std::tgamma(0.25);
  std::vector<double> errs = {
      rel(c.theta2_0, std::pow(2.0, -0.25) * c.theta3_0),
      rel(c.theta4_0, std::pow(2.0, -0.25) * c.theta3_0),
      rel(c.theta1p_0, std::pow(2.0, -0.5) * c.theta3_0 * c.theta3_0 * c.theta3_0),
      rel(c.theta1p_0, c.theta2_0 * c.theta3_0 * c.theta4_0),
      rel(c.bigK, kPi * c.theta3_0 * c.theta3_0 / 2.0),
      rel(c.bigK, gq * gq / (4.0 * std::sqrt(kPi))),
      rel(c.theta3_0, std::pow(2.0, -0.5) * std::pow(kPi, -0.75) * gq),
  };
  return at_most(*std::max_element(errs.begin(), errs.end()), 1e-13, "max relative deviation");
}

CheckResult sf_modular() {
  double worst = 0.0;
  for (double v : {0.1, 0.5, 2.0, 10.0}) {
    const double lhs = jacobi_theta_zero(3, v);
    worst = std::max(worst, rel(lhs, jacobi_theta_zero(3, 1.0 / v) / std::sqrt(v)));
    worst = std::max(worst, rel(lhs, static_cast<double>(direct_theta3(0.0, v))));
    for (double z : {0.3, 1.1, 2.9}) {
      const double t = jacobi_theta(3, {z, v, kDefaultThetaTol}).real();
      worst = std::max(worst, rel(t, static_cast<double>(direct_theta3(z, v))));
    }
  }
  return at_most(worst, 1e-13, "v in {0.1, 0.5, 2, 10} against direct q-series");
}

CheckResult sf_periodicity() {
  Rng rng(101);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::complex<double> z(uniform(rng, -kPi, kPi), uniform(rng, -0.25, 0.25));
    const double v = uniform(rng, 0.3, 5.0);
    const auto t3 = jacobi_theta(3, {z, v, kDefaultThetaTol});
    const auto t3p = jacobi_theta(3, {z + kPi, v, kDefaultThetaTol});
    const auto t3h = jacobi_theta(3, {z + kPi / 2.0, v, kDefaultThetaTol});
    const auto t4 = jacobi_theta(4, {z, v, kDefaultThetaTol});
    worst = std::max(worst, std::abs(t3p - t3) / std::abs(t3));
    worst = std::max(worst, std::abs(t3h - t4) / std::abs(t4));
  }
  return at_most(worst, 1e-13, "50 random (z, v)");
}

CheckResult sf_real_values() {
  Rng rng(102);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double z = uniform(rng, -5.0, 5.0);
    const double v = std::exp(uniform(rng, std::log(0.05), std::log(20.0)));
    for (int kind : {3, 4}) {
      const auto t = jacobi_theta(kind, {z, v, kDefaultThetaTol});
      worst = std::max(worst, std::abs(t.imag()) / std::abs(t));
    }
  }
  return at_most(worst, 1e-15, "|Im| / |value| for kinds 3, 4 at real z");
}

CheckResult sf_tail_monotone() {
  double worst = 0.0;
  for (int n = 1; n <= 5; ++n) {
    double prev = tail_bound(n, 1.0, 1.0);
    for (double v = 1.25; v <= 20.0; v += 0.25) {
      const double b = tail_bound(n, 1.0, v);
      if (b > prev) worst = std::max(worst, b - prev);
      prev = b;
    }
  }
  return at_most(worst, 0.0, "largest increase of tail_bound over v in [1, 20]");
}

// ----------------------------------------------------------------------------
// lattice_theta

CheckResult lt_periodicity() {
  Rng rng(201);
  int mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 4;
    std::vector<double> x(static_cast<std::size_t>(n));
    // Dyadic coordinates keep x + 2a exact in binary floating point.
    for (double& c : x) c = std::ldexp(std::floor(uniform(rng, 0.0, 2048.0)), -10);
    const double v = uniform(rng, 0.05, 3.0);
    const double base = big_theta(TorusPoint(x, 1.0), v);
    for (std::size_t j = 0; j < x.size(); ++j) {
      auto y = x;
      y[j] += 2.0;
      if (big_theta(TorusPoint(y, 1.0), v) != base) ++mismatches;
      y[j] -= 4.0;
      if (big_theta(TorusPoint(y, 1.0), v) != base) ++mismatches;
    }
  }
  return at_most(mismatches, 0.0, "shifts by 2a e_j that changed Theta");
}

CheckResult lt_symmetry() {
  Rng rng(202);
  double worst = 0.0;
  for (int i = 0; i < 60; ++i) {
    const int n = 2 + i % 3;
    auto x = random_point(rng, n, 1.0, 0.0);
    const double v = uniform(rng, 0.05, 3.0);
    const double base = big_theta(TorusPoint(x, 1.0), v);
    auto p = x;
    std::reverse(p.begin(), p.end());
    worst = std::max(worst, rel(big_theta(TorusPoint(p, 1.0), v), base));
    for (std::size_t j = 0; j < x.size(); ++j) {
      auto r = x;
      r[j] = 2.0 - r[j];
      worst = std::max(worst, rel(big_theta(TorusPoint(r, 1.0), v), base));
    }
  }
  return at_most(worst, 1e-14, "relative change under permutations and reflections");
}

CheckResult lt_positivity() {
  Rng rng(203);
  double smallest = 1e300;
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + i % 4;
    const auto x = random_point(rng, n, 1.0, 0.0);
    const double v = std::exp(uniform(rng, std::log(1e-3), std::log(10.0)));
    smallest = std::min(smallest, big_theta(TorusPoint(x, 1.0), v));
  }
  return result(smallest > 0.0, smallest, 0.0, "smallest sampled Theta (must be > 0)");
}

CheckResult lt_binomial() {
  using mp = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<300>>;
  const mp pi = boost::math::constants::pi<mp>();
  double worst = 0.0;
  for (double v : {0.1, 1.0, 10.0}) {
    // Corner values theta_3(0 | i pi v) and theta_4(0 | i pi v) at 300 bits.
    const mp w = pi * mp(v);
    mp t3 = 1;
    mp t4 = 1;
    for (int k = 1;; ++k) {
      const mp term = 2 * exp(-pi * w * k * k);
      if (term < mp("1e-290")) break;
      t3 += term;
      t4 += (k % 2 == 0 ? term : mp(-term));
    }
    for (int n = 1; n <= 5; ++n) {
      mp explicit_sum = 0;
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        const int odd = __builtin_popcount(mask);
        const mp corner = pow(t3, n - odd) * pow(t4, odd);
        explicit_sum += (odd % 2 == 0) ? corner : mp(-corner);
      }
      const double ref = explicit_sum.convert_to<double>();
      worst = std::max(worst, rel(alternating_cell_sum(n, v, 1.0), ref));
    }
  }
  return at_most(worst, 1e-12, "n = 1..5, v in {0.1, 1, 10} against the 2^n-term sum at 300 bits");
}

CheckResult lt_tail_domination() {
  Rng rng(205);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + i % 3;
    const double a = (i % 2 == 0) ? 1.0 : 0.5;
    const auto x = random_point(rng, n, a, 0.0);
    const double v = uniform(rng, 1.0, 5.0);
    const double ratio = std::abs(one_minus_big_theta(TorusPoint(x, a), v)) / tail_bound(n, a, v);
    worst = std::max(worst, ratio);
  }
  return at_most(worst, 1.0, "max |1 - Theta| / tail_bound over 100 samples");
}

CheckResult lt_heat() {
  const double r1 = std::abs(heat_residual(TorusPoint({0.4}, 1.0), 0.3, 1e-3));
  const double r2 = std::abs(heat_residual(TorusPoint({0.4}, 1.0), 0.3, 5e-4));
  const double q = std::abs(heat_residual(TorusPoint({0.5, 0.9}, 1.0), 1.0, 1e-3));
  return all_of({at_most(r1, 1e-4, "n=1 residual"), second_order(r1, r2, "n=1 heat residual"),
                 at_most(q, 1e-5, "n=2 residual")});
}

// ----------------------------------------------------------------------------
// green

CheckResult green_1d() {
  double worst = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double x = 2.0 * i / 20.0 + 1e-3 * (i % 3);
    worst = std::max(worst, std::abs(psi_integral(TorusPoint({x}, 1.0)).value - psi_1d(x, 1.0).value));
  }
  return at_most(worst, 1e-10, "psi_integral vs Bernoulli closed form, 21 points");
}

CheckResult green_chain() {
  Rng rng(301);
  const double a = 1.0;
  std::vector<double> closed, resummed, integral;
  for (int i = 0; i < 50; ++i) {
    std::vector<double> x = random_point(rng, 2, a, 0.05);
    x[1] = uniform(rng, 0.1, 1.9);  // keep the resummed series geometric
    const TorusPoint p(x, a);
    if (p.distance_to_lattice() < 0.05) continue;
    closed.push_back(psi_2d_closed(p, Normalization::kUpToConstant).value);
    resummed.push_back(psi_fourier_partial(p, 400, FourierArrangement::kResummed1d));
    integral.push_back(psi_integral(p, tight()).value);
  }
  const std::size_t m = closed.size();
  double worst = 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mean += resummed[i] - closed[i];
    const double dc = closed[i] - closed[0];
    const double dr = resummed[i] - resummed[0];
    const double di = integral[i] - integral[0];
    worst = std::max({worst, std::abs(dc - dr), std::abs(dc - di), std::abs(dr - di)});
  }
  mean /= static_cast<double>(m);
  double var = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double d = resummed[i] - closed[i] - mean;
    var += d * d;
  }
  const double sd = std::sqrt(var / static_cast<double>(m));
  return all_of({at_most(worst, 1e-10, "pairwise potential differences, " + std::to_string(m) + " points"),
                 at_most(sd, 1e-11, "std-dev of resummed - closed")});
}

CheckResult green_interchange() {
  Rng rng(302);
  double worst = 0.0;
  for (int i = 0; i < 30; ++i) {
    const TorusPoint p(random_point(rng, 2, 1.0, 0.05), 1.0);
    const TorusPoint q({p[1], p[0]}, 1.0);
    const double base = psi_2d_closed(p, Normalization::kUpToConstant).value;
    worst = std::max(worst, std::abs(psi_2d_closed(p, Normalization::kUpToConstant, true).value - base));
    worst = std::max(worst, std::abs(psi_2d_closed(q, Normalization::kUpToConstant).value - base));
  }
  return at_most(worst, 1e-12, "roles of x1, x2 interchanged");
}

CheckResult green_zero_mean() {
  const double a = 1.0;
  const auto psi2 = [a](const std::vector<double>& x) {
    return psi_2d_closed(TorusPoint(x, a), Normalization::kZeroMean).value;
  };
  const auto psi3 = [a](const std::vector<double>& x) { return psi_integral(TorusPoint(x, a)).value; };
  const double m2c = std::abs(offset_grid_mean(2, a, 15, psi2));
  const double m2f = std::abs(offset_grid_mean(2, a, 45, psi2));
  const double m3c = std::abs(offset_grid_mean(3, a, 9, psi3));
  const double m3f = std::abs(offset_grid_mean(3, a, 27, psi3));
  return all_of({result(m2f < m2c, m2f, m2c, "n=2 grid mean 15^2 -> 45^2: " + format_double(m2c) + " -> " + format_double(m2f)),
                 at_most(m2f, 5e-3, "n=2 finest"),
                 result(m3f < m3c, m3f, m3c, "n=3 grid mean 9^3 -> 27^3: " + format_double(m3c) + " -> " + format_double(m3f)),
                 at_most(m3f, 5e-3, "n=3 finest")});
}

CheckResult green_symmetry() {
  Rng rng(303);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + i % 2;
    const auto x = random_point(rng, n, 1.0, 0.1);
    const auto eval = [n](const std::vector<double>& y) {
      const TorusPoint p(y, 1.0);
      return n == 2 ? psi_2d_closed(p, Normalization::kZeroMean).value : psi_integral(p, tight()).value;
    };
    const double base = eval(x);
    auto p = x;
    std::rotate(p.begin(), p.begin() + 1, p.end());
    worst = std::max(worst, std::abs(eval(p) - base));
    for (std::size_t j = 0; j < x.size(); ++j) {
      auto r = x;
      r[j] = 2.0 - r[j];
      worst = std::max(worst, std::abs(eval(r) - base));
    }
  }
  return at_most(worst, 1e-12, "hyperoctahedral images, n = 2 closed form and n = 3 integral");
}

CheckResult green_laplace() {
  std::vector<CheckResult> parts;
  for (int n : {2, 3}) {
    const std::vector<double> x = n == 2 ? std::vector<double>{0.7, 1.2} : std::vector<double>{0.7, 1.2, 0.9};
    const double target = -1.0 / std::pow(2.0, n);
    const auto f = [](const std::vector<double>& y) { return psi_integral(TorusPoint(y, 1.0), tight()).value; };
    const double e1 = std::abs(fd_laplacian(f, x, 0.1) - target);
    const double e2 = std::abs(fd_laplacian(f, x, 0.05) - target);
    parts.push_back(second_order(e1, e2, "n=" + std::to_string(n) + " Laplacian + 1/|T|"));
  }
  return all_of(parts);
}

CheckResult green_epstein() {
  std::vector<CheckResult> parts;
  double worst = 0.0;
  for (const auto& x : {std::vector<double>{1.0}, {0.6}, {1.0, 1.0}, {0.3, 1.4}, {0.5, 1.1, 0.7}}) {
    const TorusPoint p(x, 1.0);
    worst = std::max(worst, rel(epstein_mellin(p, 2.0), p.cell_volume() * psi_integral(p, tight()).value));
  }
  parts.push_back(at_most(worst, 1e-10, "E(x, 2) = |T| Psi(x)"));

  // s = 4 > n = 2 against -Gamma(s/2) (a/pi)^s sum_{0 < |k| <= 60} cos(pi k.x/a)/|k|^s.
  const double s = 4.0;
  const TorusPoint p({1.0, 1.0}, 1.0);
  double direct = 0.0;
  for (int k1 = -60; k1 <= 60; ++k1) {
    for (int k2 = -60; k2 <= 60; ++k2) {
      const int n2 = k1 * k1 + k2 * k2;
      if (n2 == 0 || n2 > 3600) continue;
      direct += std::cos(kPi * (k1 + k2)) / std::pow(n2, s / 2.0);
    }
  }
  direct *= -std::tgamma(s / 2.0) / std::pow(kPi, s);
  const double tail = 2.0 * kPi / ((s - 2.0) * std::pow(60.0, s - 2.0)) / std::pow(kPi, s);
  parts.push_back(at_most(std::abs(epstein_mellin(p, s) - direct), tail, "s = 4 vs direct sum, tail bound"));
  return all_of(parts);
}

// ----------------------------------------------------------------------------
// crystal_potential

CheckResult crystal_harmonic() {
  std::vector<CheckResult> parts;
  for (Family f : {Family::kNaCl, Family::kCsCl}) {
    const CrystalSpec spec{f, 2, 1.0};
    const auto V = [&spec](const std::vector<double>& y) { return potential_2d_closed(spec, TorusPoint(y, 1.0)); };
    const std::vector<double> x{0.45, 0.6};
    parts.push_back(second_order(std::abs(fd_laplacian(V, x, 0.1)), std::abs(fd_laplacian(V, x, 0.05)),
                                 std::string(to_string(f)) + " n=2 Laplacian V"));
  }
  const CrystalSpec spec{Family::kNaCl, 3, 1.0};
  const auto V = [&spec](const std::vector<double>& y) {
    return potential_integral(spec, TorusPoint(y, 1.0), tight());
  };
  const std::vector<double> x{0.45, 0.6, 0.3};
  parts.push_back(second_order(std::abs(fd_laplacian(V, x, 0.1)), std::abs(fd_laplacian(V, x, 0.05)),
                               "NaCl n=3 Laplacian V"));
  return all_of(parts);
}

CheckResult crystal_sign_rule() {
  Rng rng(401);
  double w2 = 0.0;
  double w3 = 0.0;
  const CrystalSpec s2{Family::kNaCl, 2, 1.0};
  const CrystalSpec s3{Family::kNaCl, 3, 1.0};
  for (int i = 0; i < 30; ++i) {
    const auto x = random_off_site(rng, s2, 0.05);
    for (std::size_t j = 0; j < 2; ++j) {
      auto y = x;
      y[j] += 1.0;
      w2 = std::max(w2, std::abs(potential_2d_closed(s2, TorusPoint(y, 1.0)) +
                                 potential_2d_closed(s2, TorusPoint(x, 1.0))));
    }
  }
  for (int i = 0; i < 6; ++i) {
    const auto x = random_off_site(rng, s3, 0.1);
    auto y = x;
    y[static_cast<std::size_t>(i % 3)] += 1.0;
    w3 = std::max(w3, std::abs(potential_integral(s3, TorusPoint(y, 1.0)) +
                               potential_integral(s3, TorusPoint(x, 1.0))));
  }
  return all_of({at_most(w2, 1e-10, "n=2 closed form"), at_most(w3, 1e-8, "n=3 quadrature")});
}

CheckResult crystal_cscl_inversion() {
  Rng rng(402);
  double w2 = 0.0;
  double w3 = 0.0;
  for (int n : {2, 3}) {
    const CrystalSpec spec{Family::kCsCl, n, 1.0};
    for (int i = 0; i < (n == 2 ? 30 : 6); ++i) {
      const auto x = random_off_site(rng, spec, 0.1);
      std::vector<double> y(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) y[j] = 1.0 - x[j];
      if (n == 2) {
        w2 = std::max(w2, std::abs(potential_2d_closed(spec, TorusPoint(y, 1.0)) +
                                   potential_2d_closed(spec, TorusPoint(x, 1.0))));
      } else {
        w3 = std::max(w3, std::abs(potential_integral(spec, TorusPoint(y, 1.0)) +
                                   potential_integral(spec, TorusPoint(x, 1.0))));
      }
    }
  }
  return all_of({at_most(w2, 1e-10, "V(a1 - x) = -V(x), n=2"), at_most(w3, 1e-8, "n=3")});
}

CheckResult crystal_closed_vs_integral() {
  Rng rng(403);
  double worst = 0.0;
  for (Family f : {Family::kNaCl, Family::kCsCl}) {
    const CrystalSpec spec{f, 2, 1.0};
    for (int i = 0; i < 50; ++i) {
      const TorusPoint x(random_off_site(rng, spec, 0.02), 1.0);
      worst = std::max(worst, std::abs(potential_2d_closed(spec, x) - potential_integral(spec, x, tight())));
    }
  }
  return at_most(worst, 1e-9, "50 random points per family");
}

CheckResult crystal_zero_mean() {
  const CrystalSpec nacl{Family::kNaCl, 2, 1.0};
  const CrystalSpec cscl{Family::kCsCl, 2, 1.0};
  const auto vn = [&nacl](const std::vector<double>& x) { return potential_2d_closed(nacl, TorusPoint(x, 1.0)); };
  const auto vc = [&cscl](const std::vector<double>& x) { return potential_2d_closed(cscl, TorusPoint(x, 1.0)); };
  // 1/3-step offsets land on no site; CsCl grids are not antisymmetric, so the
  // residual is a genuine quadrature error.
  const double c1 = std::abs(offset_grid_mean(2, 1.0, 15, vc));
  const double c2 = std::abs(offset_grid_mean(2, 1.0, 45, vc));
  const double n1 = std::abs(offset_grid_mean(2, 1.0, 15, vn));
  const double n2 = std::abs(offset_grid_mean(2, 1.0, 45, vn));
  const PotentialField f8 = field_grid(nacl, 8);
  const PotentialField f16 = field_grid(nacl, 16);
  return all_of({result(c2 < c1, c2, c1, "CsCl 15^2 -> 45^2: " + format_double(c1) + " -> " + format_double(c2)),
                 at_most(n2, std::max(n1, 1e-12), "NaCl 15^2 -> 45^2: " + format_double(n1) + " -> " + format_double(n2)),
                 at_most(std::abs(f8.regular_mean()), 0.05, "field_grid res 8 regular mean"),
                 at_most(std::abs(f16.regular_mean()), std::max(std::abs(f8.regular_mean()), 1e-12),
                         "field_grid res 16 regular mean")});
}

CheckResult crystal_field_isometry() {
  const CrystalSpec nacl{Family::kNaCl, 2, 1.0};
  const PotentialField f = field_grid(nacl, 8);
  double worst = 0.0;
  int singular = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.mask[i] != SampleMask::kRegular) {
      ++singular;
      continue;
    }
    const std::size_t ix = i % 8;
    const std::size_t iy = i / 8;
    const std::size_t shifted = (ix + 4) % 8 + 8 * ((iy + 4) % 8);  // translation by (a, a)
    const std::size_t swapped = iy + 8 * ix;
    worst = std::max({worst, std::abs(f.samples[shifted] - f.samples[i]), std::abs(f.samples[swapped] - f.samples[i])});
  }
  const CrystalSpec cscl{Family::kCsCl, 3, 1.0};
  const PotentialField g = field_grid(cscl, 4);
  int singular3 = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.mask[i] != SampleMask::kRegular) {
      ++singular3;
      continue;
    }
    const std::size_t x = i % 4;
    const std::size_t y = (i / 4) % 4;
    const std::size_t z = i / 16;
    const std::size_t rotated = y + 4 * z + 16 * x;
    worst = std::max(worst, std::abs(g.samples[rotated] - g.samples[i]));
  }
  return all_of({at_most(worst, 1e-10, "samples related by charge-preserving isometries"),
                 result(singular == 4 && singular3 == 2 && f.size() == 64 && g.size() == 64,
                        singular + singular3, 6, "singular sample counts 4 (NaCl 8^2) and 2 (CsCl 4^3)")});
}

CheckResult crystal_round_trip() {
  int mismatches = 0;
  for (const auto& [spec, res] : {std::pair{CrystalSpec{Family::kNaCl, 2, 1.0}, 8},
                                  std::pair{CrystalSpec{Family::kCsCl, 3, 0.5, LengthConvention::kCellSide}, 4}}) {
    const PotentialField f = field_grid(spec, res);
    std::stringstream csv;
    write_csv(f, csv);
    if (!(read_csv(csv, spec) == f)) ++mismatches;
    if (!(field_from_json(to_json(f)) == f)) ++mismatches;
  }
  return at_most(mismatches, 0.0, "CSV and JSON round trips that were not bit-exact");
}

// ----------------------------------------------------------------------------
// madelung

CheckResult madelung_agreement() {
  std::vector<CheckResult> parts;
  for (int n : {3, 4, 5}) {
    const CrystalSpec spec{Family::kNaCl, n, 1.0};
    const double sub = finite_part_subtracted(spec).value;
    parts.push_back(at_most(std::abs(finite_part_epsilon(spec, 1e-6).value - sub), 5e-6,
                            "NaCl n=" + std::to_string(n) + " epsilon vs subtracted"));
  }
  for (Family f : {Family::kNaCl, Family::kCsCl}) {
    const CrystalSpec spec{f, 3, 1.0};
    parts.push_back(at_most(std::abs(finite_part_subtracted(spec).value - ewald_madelung(spec).value), 1e-8,
                            std::string(to_string(f)) + " n=3 subtracted vs Ewald"));
  }
  return all_of(parts);
}

CheckResult madelung_eps_bias() {
  // The true bias int_0^eps (f - v^(-n/2)) is ~ v^(-n/2) e^(-pi/4eps), below
  // double resolution for every eps here; a later eps may not exceed an
  // earlier one by more than their combined error estimates.
  const CrystalSpec spec{Family::kNaCl, 3, 1.0};
  const double sub = finite_part_subtracted(spec).value;
  double prev = 1e300;
  double prev_err = 0.0;
  double worst = 0.0;
  std::string seq;
  for (double eps : {1e-3, 1e-4, 1e-5, 1e-6}) {
    const MadelungResult r = finite_part_epsilon(spec, eps);
    const double bias = std::abs(r.value - sub);
    worst = std::max(worst, bias - prev - (r.error_estimate + prev_err));
    if (!seq.empty()) seq += ", ";
    seq += format_double(bias);
    prev = bias;
    prev_err = r.error_estimate;
  }
  return result(worst <= 0.0, worst, 0.0, "|eps - subtracted| for eps = 1e-3..1e-6: " + seq);
}

CheckResult madelung_scaling() {
  double worst = 0.0;
  for (Family f : {Family::kNaCl, Family::kCsCl}) {
    for (int n : {3, 4}) {
      const double base = finite_part_subtracted({f, n, 1.0}).value;
      for (double a : {0.5, 2.0}) {
        worst = std::max(worst, rel(finite_part_subtracted({f, n, a}).value, base * std::pow(a, 2.0 - n)));
      }
    }
  }
  return at_most(worst, 1e-9, "M(a) = M(1) a^(2-n), n = 3, 4, a in {0.5, 2}");
}

CheckResult madelung_2d_invariance() {
  const double ref = madelung_2d({Family::kCsCl, 2, 1.0}).value;
  double worst = 0.0;
  for (Family f : {Family::kNaCl, Family::kCsCl}) {
    for (double a : {0.5, 1.0, 2.0}) worst = std::max(worst, std::abs(madelung_2d({f, 2, a}).value - ref));
  }
  return at_most(worst, 1e-12, "across a in {0.5, 1, 2} and both families");
}

CheckResult madelung_conventions() {
  const CrystalSpec nn = CrystalSpec::from_length(Family::kCsCl, 3, 1.0, LengthConvention::kNearestNeighbour);
  const CrystalSpec cell = CrystalSpec::from_length(Family::kCsCl, 3, 1.0, LengthConvention::kCellSide);
  const double m_nn = finite_part_subtracted(nn).value;
  const double m_cell = finite_part_subtracted(cell).value;
  const double expected = m_cell * std::pow(nn.a / cell.a, 2.0 - 3.0);
  return at_most(rel(m_nn, expected), 1e-9, "CsCl n=3: d_nn = 1 vs 2a = 1 through a^(2-n)");
}

CheckResult madelung_binding() {
  const double two_log_k = 2.0 * std::log(lemniscatic_constants().bigK);
  double worst = 0.0;
  for (Family f : {Family::kNaCl, Family::kCsCl}) {
    for (double a : {0.5, 1.0, 2.0}) {
      const CrystalSpec spec{f, 2, a};
      const auto sites = charge_sites(spec);
      for (std::size_t i = 0; i < sites.size(); ++i) {
        const BindingPotential b = binding_potential_2d(spec, static_cast<int>(i));
        const double expect = b.charge > 0 ? 0.0 : two_log_k;
        worst = std::max({worst, std::abs(b.value - expect), std::abs(b.extrapolated - expect)});
      }
    }
  }
  return at_most(worst, 1e-8, "V_M = 0 (origin-like) and 2 log K (counter-ions), analytic and extrapolated");
}

CheckResult madelung_ambiguity() {
  const CrystalSpec cscl{Family::kCsCl, 2, 1.0};
  const CrystalSpec nacl{Family::kNaCl, 2, 1.0};
  const double shift = ambiguous_finite_part_2d(cscl, 1.0) - ambiguous_finite_part_2d(cscl, std::numbers::e);
  const double shift_n = ambiguous_finite_part_2d(nacl, 2.0) - ambiguous_finite_part_2d(nacl, 2.0 * std::numbers::e);
  const double k = lemniscatic_constants().bigK;
  const double a_star = kPi * std::exp(std::numbers::egamma) / (2.0 * k * k);
  return all_of({at_most(std::max(std::abs(shift - 1.0), std::abs(shift_n - 1.0)), 1e-12, "FP(A) - FP(eA) = 1"),
                 at_most(std::abs(ambiguous_finite_part_2d(cscl, a_star)), 1e-10,
                         "CsCl FP vanishes at A = pi e^gamma / (2 K^2)")});
}

CheckResult madelung_cell_energy() {
  const double log_k = std::log(lemniscatic_constants().bigK);
  const CrystalSpec nacl3{Family::kNaCl, 3, 1.0};
  const MadelungResult m3 = finite_part_subtracted(nacl3);
  const CrystalSpec c2{Family::kCsCl, 2, 1.0};
  const CrystalSpec n2{Family::kNaCl, 2, 1.0};
  return all_of({at_most(std::abs(cell_energy(nacl3, m3) - 4.0 * m3.value), 1e-15, "NaCl n=3 U = 4 M"),
                 at_most(std::abs(cell_energy(nacl3, m3) + 6.9902584), 1e-7, "NaCl n=3 U"),
                 at_most(std::abs(cell_energy(c2, madelung_2d(c2)) + log_k), 1e-12, "CsCl n=2 U = -log K"),
                 at_most(std::abs(cell_energy(n2, madelung_2d(n2)) + 2.0 * log_k), 1e-12, "NaCl n=2 U = -2 log K")});
}

CheckResult madelung_determinism() {
  const CrystalSpec spec{Family::kCsCl, 3, 0.5, LengthConvention::kCellSide};
  const bool same_m = to_json(finite_part_subtracted(spec)) == to_json(finite_part_subtracted(spec));
  const CrystalSpec s2{Family::kNaCl, 2, 1.0};
  const bool same_f = to_json(field_grid(s2, 8)) == to_json(field_grid(s2, 8));
  const bool same_2d = to_json(madelung_2d(s2)) == to_json(madelung_2d(s2));
  return result(same_m && same_f && same_2d, (same_m && same_f && same_2d) ? 0 : 1, 0,
                "repeated runs give byte-identical JSON");
}

// ----------------------------------------------------------------------------
// lattice_sum_oracle

CheckResult oracle_equivalence() {
  std::vector<CheckResult> parts;
  for (const CrystalSpec& spec : {CrystalSpec{Family::kNaCl, 3, 1.0},
                                  CrystalSpec{Family::kCsCl, 3, 0.5, LengthConvention::kCellSide},
                                  CrystalSpec{Family::kNaCl, 4, 1.0}}) {
    parts.push_back(at_most(std::abs(ewald_madelung(spec).value - finite_part_subtracted(spec).value), 1e-8,
                            std::string(to_string(spec.family)) + " n=" + std::to_string(spec.n)));
  }
  return all_of(parts);
}

CheckResult oracle_splitting() {
  double worst = 0.0;
  for (const CrystalSpec& spec : {CrystalSpec{Family::kNaCl, 3, 1.0}, CrystalSpec{Family::kCsCl, 3, 1.0},
                                  CrystalSpec{Family::kNaCl, 4, 1.0}}) {
    worst = std::max(worst, std::abs(ewald_value(spec, 0.7) - ewald_value(spec, 1.4)));
    worst = std::max(worst, std::abs(ewald_value(spec, 0.5) - ewald_value(spec, 2.0)));
  }
  return at_most(worst, 1e-10, "splitting 0.7 vs 1.4 and 0.5 vs 2");
}

CheckResult oracle_cubes() {
  const auto sums = naive_partial_sums({Family::kNaCl, 3, 1.0}, {OrderingKind::kExpandingCubes, 40});
  const double e10 = std::abs(sums[9].partial_sum - kNaClReference);
  const double e20 = std::abs(sums[19].partial_sum - kNaClReference);
  const double e40 = std::abs(sums[39].partial_sum - kNaClReference);
  return result(e10 > e20 && e20 > e40 && e40 < 2e-2, e40, 2e-2,
                "cube errors at R = 10, 20, 40: " + format_double(e10) + ", " + format_double(e20) + ", " +
                    format_double(e40));
}

CheckResult oracle_arrangement() {
  const CrystalSpec spec{Family::kNaCl, 3, 1.0};
  const auto cubes = naive_partial_sums(spec, {OrderingKind::kExpandingCubes, 40});
  const auto spheres = naive_partial_sums(spec, {OrderingKind::kExpandingSpheres, 40});
  double gap = 0.0;
  for (std::size_t i = 0; i < cubes.size(); ++i) gap = std::max(gap, std::abs(cubes[i].partial_sum - spheres[i].partial_sum));
  const double e40 = std::abs(cubes.back().partial_sum - kNaClReference);
  return result(gap > 1e-3 && e40 < 2e-2, gap, 1e-3,
                "max |cubes - spheres| over R <= 40 (must exceed 1e-3); cube error at 40 = " + format_double(e40));
}

CheckResult oracle_alpha() {
  const double e1 = std::abs(alpha_coefficient(3, 1.0) - 1.0);
  const double e2 = std::abs(alpha_coefficient(4, 1.0) - 1.0 / kPi);
  double e3 = 0.0;
  for (int n = 3; n <= 6; ++n) e3 = std::max(e3, rel(alpha_coefficient(n, 2.0), alpha_coefficient(n, 1.0) * std::pow(2.0, 2.0 - n)));
  return at_most(std::max({e1, e2, e3}), 1e-15, "alpha(3,1) = 1, alpha(4,1) = 1/pi, a-scaling");
}

struct Registered {
  const char* module;
  const char* name;
  CheckResult (*run)();
};

const std::vector<Registered>& registry() {
  static const std::vector<Registered> checks = {
      {"special_functions", "lemniscatic_identities", sf_lemniscatic},
      {"special_functions", "modular_consistency", sf_modular},
      {"special_functions", "periodicity_and_shift", sf_periodicity},
      {"special_functions", "real_argument_real_value", sf_real_values},
      {"special_functions", "tail_bound_monotone", sf_tail_monotone},
      {"lattice_theta", "lattice_periodicity", lt_periodicity},
      {"lattice_theta", "hyperoctahedral_symmetry", lt_symmetry},
      {"lattice_theta", "positivity", lt_positivity},
      {"lattice_theta", "binomial_identity", lt_binomial},
      {"lattice_theta", "tail_domination", lt_tail_domination},
      {"lattice_theta", "heat_equation_residual", lt_heat},
      {"green", "bernoulli_closed_form", green_1d},
      {"green", "consistency_chain_2d", green_chain},
      {"green", "roles_interchanged", green_interchange},
      {"green", "zero_mean", green_zero_mean},
      {"green", "symmetry_group", green_symmetry},
      {"green", "discrete_laplace_equation", green_laplace},
      {"green", "epstein_mellin", green_epstein},
      {"crystal_potential", "harmonic_off_sites", crystal_harmonic},
      {"crystal_potential", "nacl_sign_rule", crystal_sign_rule},
      {"crystal_potential", "cscl_inversion", crystal_cscl_inversion},
      {"crystal_potential", "closed_form_vs_integral", crystal_closed_vs_integral},
      {"crystal_potential", "zero_mean", crystal_zero_mean},
      {"crystal_potential", "field_isometry", crystal_field_isometry},
      {"crystal_potential", "serialization_round_trip", crystal_round_trip},
      {"madelung", "method_agreement", madelung_agreement},
      {"madelung", "eps_bias_order", madelung_eps_bias},
      {"madelung", "scaling_law", madelung_scaling},
      {"madelung", "invariance_2d", madelung_2d_invariance},
      {"madelung", "length_conventions", madelung_conventions},
      {"madelung", "binding_potentials_2d", madelung_binding},
      {"madelung", "ambiguous_finite_part_2d", madelung_ambiguity},
      {"madelung", "cell_energy", madelung_cell_energy},
      {"madelung", "deterministic_output", madelung_determinism},
      {"lattice_sum_oracle", "ewald_equivalence", oracle_equivalence},
      {"lattice_sum_oracle", "ewald_splitting_invariance", oracle_splitting},
      {"lattice_sum_oracle", "cube_partial_sums", oracle_cubes},
      {"lattice_sum_oracle", "arrangement_dependence", oracle_arrangement},
      {"lattice_sum_oracle", "alpha_coefficient", oracle_alpha},
  };
  return checks;
}

}  // namespace

bool VerifyReport::passed() const { return failures() == 0; }

int VerifyReport::failures() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }));
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["passed"] = passed();
  j["failures"] = failures();
  auto arr = nlohmann::ordered_json::array();
  for (const CheckResult& c : checks) {
    nlohmann::ordered_json e;
    e["module"] = c.module;
    e["name"] = c.name;
    e["passed"] = c.passed;
    e["measured"] = c.measured;
    e["threshold"] = c.threshold;
    e["detail"] = c.detail;
    arr.push_back(std::move(e));
  }
  j["checks"] = std::move(arr);
  return j.dump(2);
}

std::vector<std::string> verify_check_names() {
  std::vector<std::string> out;
  for (const Registered& r : registry()) out.push_back(std::string(r.module) + "/" + r.name);
  return out;
}

VerifyReport run_verify(const VerifyOptions& options) {
  VerifyReport report;
  for (const Registered& r : registry()) {
    const std::string id = std::string(r.module) + "/" + r.name;
    if (!options.filter.empty() && id.find(options.filter) == std::string::npos) continue;
    CheckResult c;
    try {
      c = r.run();
    } catch (const std::exception& e) {
      c = result(false, 0.0, 0.0, std::string("exception: ") + e.what());
    }
    c.module = r.module;
    c.name = r.name;
    report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace madelung
