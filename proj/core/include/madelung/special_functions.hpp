#pragma once

#include <complex>

namespace madelung {

inline constexpr double kDefaultThetaTol = 1e-14;

// Argument of a one-dimensional Jacobi theta function with modular parameter
// tau = i*v. The nome is q = exp(-pi*v) and
//   theta_3(z | i v) = sum_k q^(k^2) exp(2 i k z).
struct ThetaArg {
  std::complex<double> z;
  double v = 1.0;
  double tol = kDefaultThetaTol;
};

// theta_kind(z | i v) for kind in {1, 2, 3, 4}. For v < 1 the imaginary
// modular transformation is applied first, so the summed series always has
// modular parameter >= 1. Real z takes a real-arithmetic path and the result
// has an exactly zero imaginary part.
[[nodiscard]] std::complex<double> jacobi_theta(int kind, const ThetaArg& arg);

// d/dz theta_kind(z | i v), by term-wise differentiation of the same series.
[[nodiscard]] std::complex<double> jacobi_theta_prime(int kind, const ThetaArg& arg);

// Real-argument path of jacobi_theta.
[[nodiscard]] double jacobi_theta_real(int kind, double z, double v, double tol = kDefaultThetaTol);

// theta_3(z | i v) - 1 summed directly as 2 sum_{k>=1} q^(k^2) cos(2kz), so
// the result keeps full relative accuracy when it is tiny. Requires v >= 1.
[[nodiscard]] double theta3_minus_one(double z, double v, double tol = kDefaultThetaTol);

// theta_kind(0 | i v) for kind in {2, 3, 4}. For v < 1 returns
// v^(-1/2) * theta_k(0 | i/v), where k = 3 for kind 3 and kinds 2, 4 swap.
[[nodiscard]] double jacobi_theta_zero(int kind, double v, double tol = kDefaultThetaTol);

// theta_1'(0 | i v).
[[nodiscard]] double theta1_prime_zero(double v, double tol = kDefaultThetaTol);

// theta_3(0 | i v) - theta_4(0 | i v) = 4 sum_{k odd} q^(k^2), free of cancellation.
[[nodiscard]] double theta3_minus_theta4_zero(double v, double tol = kDefaultThetaTol);

// Theta zero-values of the square (lemniscatic) lattice, tau = i.
struct LemniscaticConstants {
  double theta3_0;   // theta_3(0|i) = 2^(-1/2) pi^(-3/4) Gamma(1/4)
  double theta2_0;   // = theta_4(0|i) = 2^(-1/4) theta_3(0|i)
  double theta4_0;
  double theta1p_0;  // theta_1'(0|i) = theta_2 theta_3 theta_4 at 0
  double bigK;       // K(1/sqrt 2) = pi theta_3(0|i)^2 / 2
};

// Evaluated once from the theta series.
[[nodiscard]] const LemniscaticConstants& lemniscatic_constants();

// Upper bound on |1 - Theta(x|v)| uniform in x, for lattice 2aZ^n:
//   2n exp(-pi^2 v/a^2) + pi^(n/2)/Gamma(n/2) * E_{1-n/2}(pi^2 v/a^2),
// with E_nu replaced by twice its large-argument form exp(-z)/z.
// Nonincreasing in v. Requires v >= 1.
[[nodiscard]] double tail_bound(int n, double a, double v);

}  // namespace madelung
