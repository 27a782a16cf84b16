#include "madelung/green.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "madelung/errors.hpp"

namespace madelung {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFirstPanel = 1e-3;

// Bound on the integral over [W, inf) of w^c |1 - Theta(x | a^2 w/pi)|, from
// tail_bound written in z = pi w (a = 1, v = z/pi^2 reproduces it).
double tail_in_w(int n, double c, double W) {
  const double z = kPi * W;
  if (z < std::max(kPi * kPi, static_cast<double>(n))) return std::numeric_limits<double>::infinity();
  const double rate = kPi - (c > 0.0 ? c / W : 0.0);
  if (rate < 0.5 * kPi) return std::numeric_limits<double>::infinity();
  return 2.0 * std::pow(W, c) * tail_bound(n, 1.0, z / (kPi * kPi)) / rate;
}

// Small-w breakpoints that resolve the boundary layer of width ~ pi r^2/(4a^2)
// when x sits close to the lattice.
std::vector<double> boundary_layer_breaks(const TorusPoint& x, double floor) {
  std::vector<double> out;
  const double r = x.distance_to_lattice();
  const double wr = kPi * r * r / (4.0 * x.a() * x.a());
  for (double b = 10.0 * wr; b > floor; b /= 10.0) {
    if (b < kFirstPanel) out.push_back(b);
  }
  return out;
}

// Argument of Theta; below this w, 1 - Theta(x|w) equals 1 to double precision.
double flat_below(const TorusPoint& x) {
  const double r = x.distance_to_lattice();
  const double wr = kPi * r * r / (4.0 * x.a() * x.a());
  return std::min(kFirstPanel, wr / 50.0);
}

void require_off_lattice(const TorusPoint& x, const char* what) {
  if (x.is_lattice_point()) throw SingularityError(std::string(what) + " is singular at lattice points");
}

double raw_psi_2d(double x1, double x2, double a) {
  const std::complex<double> z(kPi * x1 / (2.0 * a), kPi * x2 / (2.0 * a));
  const double t1 = std::abs(jacobi_theta(1, {z, 1.0, kDefaultThetaTol}));
  return std::log(t1) / (2.0 * kPi) - x2 * x2 / (8.0 * a * a);
}

}  // namespace

GreenValue psi_integral(const TorusPoint& x, const QuadratureConfig& cfg) {
  cfg.validate();
  const int n = x.dim();
  if (n >= 2) require_off_lattice(x, "Psi");
  const double a = x.a();
  const double scale = a * a / (kPi * x.cell_volume());

  const Integrand f = [&x](double w) { return one_minus_big_theta_scaled(x, w); };
  const auto attempt = [&](double abs_part, double rel_part) {
    QuadratureConfig upper_cfg = cfg;
    upper_cfg.eps_lower = 0.0;
    upper_cfg.abs_tol = abs_part / scale / 2.0;
    upper_cfg.rel_tol = rel_part;

    double low = 0.0;
    double low_err = 0.0;
    std::vector<double> extra;
    if (n == 1) {
      // w = t^2 removes the w^(-1/2) behaviour near the lattice point.
      const Integrand g = [&f](double t) { return t == 0.0 ? 0.0 : 2.0 * t * f(t * t); };
      std::vector<double> tb{0.0};
      auto layer = boundary_layer_breaks(x, 1e-14);
      for (auto it = layer.rbegin(); it != layer.rend(); ++it) tb.push_back(std::sqrt(*it));
      tb.push_back(std::sqrt(kFirstPanel));
      const QuadratureResult r =
          integrate_panels(g, tb, upper_cfg.abs_tol, rel_part, cfg.max_subdivisions);
      low = r.value;
      low_err = r.error;
      upper_cfg.eps_lower = kFirstPanel;
    } else {
      const double delta = flat_below(x);
      low = delta;
      upper_cfg.eps_lower = delta;
      extra = boundary_layer_breaks(x, delta);
    }
    const QuadratureResult high = integrate_half_line(
        f, upper_cfg, [n](double W) { return tail_in_w(n, 0.0, W); }, extra);

    GreenValue out;
    out.value = scale * (low + high.value);
    out.error_estimate = scale * (low_err + high.error);
    out.normalization = Normalization::kZeroMean;
    out.additive_const = 0.0;
    return out;
  };

  GreenValue out = attempt(cfg.abs_tol, cfg.rel_tol);
  const auto target = [&cfg](const GreenValue& g) { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(g.value)); };
  if (out.error_estimate > target(out)) {
    // The pieces cancel; retry with absolute targets sized to the result.
    out = attempt(0.5 * target(out), 1e-300);
  }
  if (out.error_estimate > target(out)) {
    throw AccuracyError("psi_integral did not converge", out.value, out.error_estimate);
  }
  return out;
}

GreenValue psi_1d(double x1, double a) {
  if (!(a > 0.0)) throw DomainError("psi_1d requires a > 0");
  const double x = TorusPoint({x1}, a)[0];
  GreenValue out;
  out.value = -a / 6.0 + x / 2.0 - x * x / (4.0 * a);
  out.additive_const = 0.0;
  return out;
}

double psi_2d_constant(double a) {
  static std::mutex mutex;
  static std::map<double, double> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(a); it != cache.end()) return it->second;
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-15;
  cfg.rel_tol = 1e-14;
  const double exact = psi_integral(TorusPoint({a, a}, a), cfg).value;
  const double c = exact - raw_psi_2d(a, a, a);
  cache.emplace(a, c);
  return c;
}

GreenValue psi_2d_closed(const TorusPoint& x, Normalization normalization, bool interchanged) {
  if (x.dim() != 2) throw UnsupportedError("psi_2d_closed requires n = 2");
  require_off_lattice(x, "Psi");
  const double a = x.a();
  GreenValue out;
  out.normalization = normalization;
  out.value = interchanged ? raw_psi_2d(x[1], x[0], a) : raw_psi_2d(x[0], x[1], a);
  if (normalization == Normalization::kZeroMean) {
    const double c = psi_2d_constant(a);
    out.value += c;
    out.additive_const = c;
  }
  return out;
}

double psi_fourier_partial(const TorusPoint& x, int cutoff, FourierArrangement arrangement) {
  if (cutoff < 0) throw DomainError("Fourier cutoff must be >= 0");
  const int n = x.dim();
  const double a = x.a();
  if (arrangement != FourierArrangement::kExpandingCubes && n != 2) {
    throw UnsupportedError("this Fourier arrangement is defined for n = 2 only");
  }
  if (cutoff == 0 && arrangement != FourierArrangement::kResummed1d) return 0.0;

  if (arrangement == FourierArrangement::kResummed1d) {
    const double x1 = x[0];
    const double x2 = x[1];
    const double theta = kPi * x2 / a;  // in [0, 2 pi)
    double sum = 0.0;
    for (int k = cutoff; k >= 1; --k) {
      const double ratio = (std::exp(-k * theta) + std::exp(-k * (2.0 * kPi - theta))) /
                           (-std::expm1(-2.0 * kPi * k));
      sum += ratio * std::cos(kPi * k * x1 / a) / k;
    }
    return -sum / (2.0 * kPi) - 1.0 / 12.0 + x2 / (4.0 * a) - x2 * x2 / (8.0 * a * a);
  }

  const double prefactor = -a * a / (kPi * kPi * x.cell_volume());
  const auto N = static_cast<std::size_t>(cutoff);

  if (arrangement == FourierArrangement::kAxisThenQuadrant) {
    const std::size_t inner = N * N;
    std::vector<double> c1(N + 1), c2(inner + 1);
    for (std::size_t k = 0; k <= N; ++k) c1[k] = std::cos(kPi * static_cast<double>(k) * x[0] / a);
    for (std::size_t k = 0; k <= inner; ++k) c2[k] = std::cos(kPi * static_cast<double>(k) * x[1] / a);
    double axes = 0.0;
    for (std::size_t k = N; k >= 1; --k) {
      const double kk = static_cast<double>(k * k);
      axes += 2.0 * (c1[k] + c2[k]) / kk;
    }
    double quadrant = 0.0;
    for (std::size_t k1 = 1; k1 <= N; ++k1) {
      double column = 0.0;
      const double k1sq = static_cast<double>(k1 * k1);
      for (std::size_t k2 = inner; k2 >= 1; --k2) {
        column += c2[k2] / (k1sq + static_cast<double>(k2 * k2));
      }
      quadrant += 4.0 * c1[k1] * column;
    }
    return prefactor * (axes + quadrant);
  }

  // Expanding cubes: sum over the closed positive orthant, each k weighted by
  // 2^(number of nonzero components) to account for the sign images.
  std::vector<std::vector<double>> cosines(static_cast<std::size_t>(n), std::vector<double>(N + 1));
  for (int j = 0; j < n; ++j) {
    for (std::size_t k = 0; k <= N; ++k) {
      cosines[static_cast<std::size_t>(j)][k] = std::cos(kPi * static_cast<double>(k) * x[j] / a);
    }
  }
  std::vector<std::size_t> k(static_cast<std::size_t>(n), 0);
  double sum = 0.0;
  while (true) {
    std::size_t j = 0;
    while (j < k.size() && k[j] == N) k[j++] = 0;
    if (j == k.size()) break;
    ++k[j];
    double norm2 = 0.0;
    double term = 1.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
      norm2 += static_cast<double>(k[i] * k[i]);
      term *= cosines[i][k[i]];
      if (k[i] != 0) term *= 2.0;
    }
    sum += term / norm2;
  }
  return prefactor * sum;
}

double epstein_mellin(const TorusPoint& x, double s, const QuadratureConfig& cfg) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("epstein_mellin requires real s > 0");
  cfg.validate();
  require_off_lattice(x, "E(x, s)");
  const int n = x.dim();
  const double a = x.a();
  const double c = s / 2.0 - 1.0;
  const double scale = std::pow(a * a / kPi, s / 2.0);

  const double delta = flat_below(x);
  const Integrand f = [&x, c](double w) { return std::pow(w, c) * one_minus_big_theta_scaled(x, w); };
  QuadratureConfig qc = cfg;
  qc.eps_lower = delta;
  qc.abs_tol = cfg.abs_tol / scale;
  std::vector<double> extra = boundary_layer_breaks(x, delta);
  for (double b = kFirstPanel / 10.0; b > delta; b /= 10.0) extra.push_back(b);
  const QuadratureResult r =
      integrate_half_line(f, qc, [n, c](double W) { return tail_in_w(n, c, W); }, extra);
  const double value = scale * (std::pow(delta, s / 2.0) / (s / 2.0) + r.value);
  if (!r.converged) throw AccuracyError("epstein_mellin did not converge", value, scale * r.error);
  return value;
}

}  // namespace madelung
