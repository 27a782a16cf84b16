#pragma once

#include <functional>
#include <vector>

namespace madelung {

// Settings for integrals over (eps_lower, infinity) of a modular-parameter
// variable. Panels: [eps_lower, 1e-3], [1e-3, split_v], then geometric panels
// [split_v 2^j, split_v 2^(j+1)] until the supplied tail bound is below
// abs_tol/10. All panels are then refined together by bisection.
struct QuadratureConfig {
  double eps_lower = 0.0;
  double split_v = 1.0;
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  int max_subdivisions = 4000;

  // Throws DomainError when a field is out of range.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  int subdivisions = 0;
  bool converged = false;
};

using Integrand = std::function<double(double)>;

// Bound on the integral of |f| over [V, infinity).
using TailBound = std::function<double(double)>;

// Globally adaptive 7/15-point Gauss-Kronrod quadrature over [lo, hi].
// Stops when the summed error estimate is <= max(abs_tol, rel_tol |I|) or the
// number of bisections reaches max_subdivisions (converged = false).
[[nodiscard]] QuadratureResult integrate_interval(const Integrand& f, double lo, double hi,
                                                  double abs_tol, double rel_tol,
                                                  int max_subdivisions);

// Same engine over a list of initial breakpoints (sorted, at least two).
[[nodiscard]] QuadratureResult integrate_panels(const Integrand& f,
                                                const std::vector<double>& breakpoints,
                                                double abs_tol, double rel_tol,
                                                int max_subdivisions);

// Integral over (cfg.eps_lower, infinity). The neglected tail bound is added to
// the reported error. extra_breaks inside the panel range are added to the
// initial partition.
[[nodiscard]] QuadratureResult integrate_half_line(const Integrand& f, const QuadratureConfig& cfg,
                                                   const TailBound& tail,
                                                   const std::vector<double>& extra_breaks = {});

}  // namespace madelung
