#include "madelung/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "madelung/errors.hpp"

namespace madelung {
namespace {

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
};

struct WorstFirst {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.lo > y.lo;  // deterministic tie-break
  }
};

// 7/15-point Gauss-Kronrod on [lo, hi] with the QUADPACK error scaling
// (resasc-weighted |K - G|, floored at 50 ulp of the absolute integral).
Panel apply_rule(const Integrand& f, double lo, double hi, int& evaluations) {
  using kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
  using gauss = boost::math::quadrature::gauss<double, 7>;
  static const auto& xk = kronrod::abscissa();
  static const auto& wk = kronrod::weights();
  static const auto& wg = gauss::weights();

  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  std::array<double, 15> fv{};
  fv[0] = f(center);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    fv[2 * i - 1] = f(center - half * xk[i]);
    fv[2 * i] = f(center + half * xk[i]);
  }
  evaluations += 15;

  double resk = wk[0] * fv[0];
  double resabs = wk[0] * std::abs(fv[0]);
  double resg = wg[0] * fv[0];
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const double pair = fv[2 * i - 1] + fv[2 * i];
    resk += wk[i] * pair;
    resabs += wk[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
    if (i % 2 == 0) resg += wg[i / 2] * pair;  // Gauss nodes are every other Kronrod node
  }
  const double mean = 0.5 * resk;
  double resasc = wk[0] * std::abs(fv[0] - mean);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    resasc += wk[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));
  }
  resk *= half;
  resg *= half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);

  double error = std::abs(resk - resg);
  if (resasc != 0.0 && error != 0.0) error = resasc * std::min(1.0, std::pow(200.0 * error / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) error = std::max(50.0 * eps * resabs, error);
  if (!std::isfinite(resk)) error = std::numeric_limits<double>::infinity();
  return {lo, hi, resk, error};
}

// Neumaier-compensated sum of panel values in breakpoint order.
QuadratureResult collect(std::vector<Panel> panels, int evaluations, int subdivisions,
                         double abs_tol, double rel_tol) {
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
  double sum = 0.0;
  double comp = 0.0;
  double err = 0.0;
  for (const Panel& p : panels) {
    const double t = sum + p.value;
    if (std::abs(sum) >= std::abs(p.value)) {
      comp += (sum - t) + p.value;
    } else {
      comp += (p.value - t) + sum;
    }
    sum = t;
    err += p.error;
  }
  QuadratureResult r;
  r.value = sum + comp;
  r.error = err;
  r.evaluations = evaluations;
  r.subdivisions = subdivisions;
  r.converged = err <= std::max(abs_tol, rel_tol * std::abs(r.value));
  return r;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(eps_lower >= 0.0)) throw DomainError("quadrature eps_lower must be >= 0");
  if (!(split_v >= 1.0)) throw DomainError("quadrature split_v must be >= 1");
  if (!(abs_tol > 0.0 && abs_tol < 1.0)) throw DomainError("quadrature abs_tol must be in (0, 1)");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("quadrature rel_tol must be in (0, 1)");
  if (max_subdivisions < 1) throw DomainError("quadrature max_subdivisions must be positive");
}

QuadratureResult integrate_panels(const Integrand& f, const std::vector<double>& breakpoints,
                                  double abs_tol, double rel_tol, int max_subdivisions) {
  if (breakpoints.size() < 2) throw DomainError("quadrature needs at least two breakpoints");
  int evaluations = 0;
  std::priority_queue<Panel, std::vector<Panel>, WorstFirst> heap;
  double total_value = 0.0;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i] < breakpoints[i + 1])) {
      throw DomainError("quadrature breakpoints must be strictly increasing");
    }
    Panel p = apply_rule(f, breakpoints[i], breakpoints[i + 1], evaluations);
    total_value += p.value;
    total_error += p.error;
    heap.push(p);
  }

  int subdivisions = 0;
  while (total_error > std::max(abs_tol, rel_tol * std::abs(total_value)) &&
         subdivisions < max_subdivisions) {
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;  // cannot split further
    heap.pop();
    const Panel left = apply_rule(f, worst.lo, mid, evaluations);
    const Panel right = apply_rule(f, mid, worst.hi, evaluations);
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
    // Running sums drift; rebuild them now and then.
    if (subdivisions % 256 == 0) {
      auto copy = heap;
      total_value = 0.0;
      total_error = 0.0;
      while (!copy.empty()) {
        total_value += copy.top().value;
        total_error += copy.top().error;
        copy.pop();
      }
    }
  }

  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  return collect(std::move(panels), evaluations, subdivisions, abs_tol, rel_tol);
}

QuadratureResult integrate_interval(const Integrand& f, double lo, double hi, double abs_tol,
                                    double rel_tol, int max_subdivisions) {
  return integrate_panels(f, {lo, hi}, abs_tol, rel_tol, max_subdivisions);
}

QuadratureResult integrate_half_line(const Integrand& f, const QuadratureConfig& cfg,
                                     const TailBound& tail, const std::vector<double>& extra_breaks) {
  cfg.validate();
  constexpr double kFirstPanel = 1e-3;
  std::vector<double> breaks{cfg.eps_lower};
  if (cfg.eps_lower < kFirstPanel) breaks.push_back(kFirstPanel);
  if (breaks.back() < cfg.split_v) breaks.push_back(cfg.split_v);

  const double tail_target = cfg.abs_tol / 10.0;
  double upper = breaks.back();
  double tail_value = tail(upper);
  int doublings = 0;
  while (!(tail_value <= tail_target)) {
    if (++doublings > 80) {
      throw AccuracyError("tail bound never fell below abs_tol/10", 0.0,
                          std::numeric_limits<double>::infinity());
    }
    upper *= 2.0;
    breaks.push_back(upper);
    tail_value = tail(upper);
  }
  if (breaks.size() < 2) breaks.push_back(2.0 * upper);
  for (double b : extra_breaks) {
    if (b > breaks.front() && b < breaks.back()) breaks.push_back(b);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  QuadratureResult r = integrate_panels(f, breaks, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions);
  r.error += tail_value;
  r.converged = r.error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value));
  return r;
}

}  // namespace madelung
