#pragma once

#include <optional>

#include "madelung/lattice_theta.hpp"
#include "madelung/quadrature.hpp"

namespace madelung {

// Fundamental solution Psi of the Laplacian on the n-torus,
//   Laplacian Psi = delta - 1/|T|,
// in Gaussian-unit-free form (Psi itself, not -4 pi Psi).

enum class Normalization { kZeroMean, kUpToConstant };

struct GreenValue {
  double value = 0.0;
  Normalization normalization = Normalization::kZeroMean;
  // Constant added to the raw closed form to reach zero mean; empty when the
  // value is only defined up to a constant.
  std::optional<double> additive_const;
  double error_estimate = 0.0;
};

enum class FourierArrangement {
  // Shells max_j |k_j| <= N.
  kExpandingCubes,
  // n = 2 only: the two axes, then the open quadrant with the inner index
  // running to N^2 ahead of the outer index (a repeated-series truncation).
  kAxisThenQuadrant,
  // n = 2 only: inner index summed in closed form (cosh/sinh series), outer
  // index k1 <= N. Converges geometrically off the cell edges.
  kResummed1d,
};

// Psi(x) = (1/|T|) * integral_0^inf {1 - Theta(x|v)} dv, zero mean.
// Integrated in w = pi v / a^2. Throws SingularityError at lattice points for
// n >= 2 (Psi is finite there for n = 1), AccuracyError when the quadrature
// does not reach max(abs_tol, rel_tol |Psi|).
[[nodiscard]] GreenValue psi_integral(const TorusPoint& x, const QuadratureConfig& cfg = {});

// Psi on the circle of length 2a: -a/6 + x/2 - x^2/(4a) for x in [0, 2a].
[[nodiscard]] GreenValue psi_1d(double x1, double a);

// n = 2 closed form (1/2pi) log|theta_1(pi(x1 + i x2)/2a | i)| - x2^2/(8a^2).
// With interchanged = true the roles of x1 and x2 are swapped. For kZeroMean
// the constant C(a) is fixed once per a by matching psi_integral at (a, a).
[[nodiscard]] GreenValue psi_2d_closed(const TorusPoint& x, Normalization normalization,
                                       bool interchanged = false);

// The constant C(a) used by psi_2d_closed (computed at most once per a).
[[nodiscard]] double psi_2d_constant(double a);

// Partial sums of -(a^2/(pi^2 |T|)) sum_{k != 0} cos(pi k.x/a)/|k|^2.
[[nodiscard]] double psi_fourier_partial(const TorusPoint& x, int cutoff,
                                         FourierArrangement arrangement);

// E(x, s) = integral_0^inf v^(s/2 - 1) {1 - Theta(x|v)} dv for real s > 0.
// E(x, 2) = |T| Psi(x).
[[nodiscard]] double epstein_mellin(const TorusPoint& x, double s, const QuadratureConfig& cfg = {});

}  // namespace madelung
