#include "madelung/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "madelung/errors.hpp"

namespace madelung {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr int kMaxTerms = 10000;

void check_kind(int kind) {
  if (kind < 1 || kind > 4) {
    throw DomainError("theta kind must be 1, 2, 3 or 4, got " + std::to_string(kind));
  }
}

void check_v_tol(double v, double tol) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError("theta modular parameter requires v > 0");
  }
  if (!(tol > 0.0)) {
    throw DomainError("theta truncation tolerance must be positive");
  }
}

double sign_of_parity(long long m) { return (m % 2 == 0) ? 1.0 : -1.0; }

// Kind under z -> z/tau after tau -> -1/tau.
int modular_partner(int kind) {
  switch (kind) {
    case 2: return 4;
    case 4: return 2;
    default: return kind;
  }
}

// Kinds 1 and 2 are antiperiodic under z -> z + pi, kinds 3 and 4 periodic.
bool antiperiodic(int kind) { return kind == 1 || kind == 2; }

// ---------------------------------------------------------------------------
// Real argument, v >= 1. With p = k (kinds 3, 4) or k + 1/2 (kinds 1, 2):
//   theta_1 = 2 sum (-1)^k q^(p^2) sin(2p z)
//   theta_2 = 2 sum        q^(p^2) cos(2p z)
//   theta_3 = 1 + 2 sum_{k>=1}        q^(k^2) cos(2k z)
//   theta_4 = 1 + 2 sum_{k>=1} (-1)^k q^(k^2) cos(2k z)
// Returns the sum excluding the leading 1 of kinds 3 and 4. With
// tail_relative the truncation is relative to the returned sum itself.
double real_series_tail(int kind, double z, double v, double tol, bool tail_relative = false) {
  const double pv = kPi * v;
  const bool half = antiperiodic(kind);
  const bool alternating = (kind == 1 || kind == 4);
  const double head = (half || tail_relative) ? 0.0 : 1.0;
  double sum = 0.0;
  for (int k = half ? 0 : 1; k < kMaxTerms; ++k) {
    const double p = half ? k + 0.5 : static_cast<double>(k);
    const double bound = 2.0 * std::exp(-pv * p * p);
    if (bound < tol * std::abs(head + sum) + std::numeric_limits<double>::min()) break;
    const double trig = (kind == 1) ? std::sin(2.0 * p * z) : std::cos(2.0 * p * z);
    const double sgn = alternating ? sign_of_parity(k) : 1.0;
    sum += sgn * bound * trig;
  }
  return sum;
}

// Real argument z in [-pi/2, pi/2], v < 1, through the modular transformation:
//   theta_k(z | i v) = v^(-1/2) exp(-z^2/(pi v)) * S_k(z/v | 1/v)
// where S is a series in cosh/sinh of the real argument y = z/v.
double real_transformed(int kind, double z, double v, double tol) {
  const double vt = 1.0 / v;
  const double y = z * vt;
  const double ay = std::abs(y);
  const double pv = kPi * vt;
  // Series partner: theta_3 -> theta_3(iy), theta_4 -> theta_2(iy),
  // theta_2 -> theta_4(iy), theta_1 -> i^-1 theta_1(iy).
  const int partner = modular_partner(kind);
  const bool half = antiperiodic(partner);
  const bool alternating = (partner == 1 || partner == 4);
  const double head = half ? 0.0 : 1.0;
  double sum = 0.0;
  for (int k = half ? 0 : 1; k < kMaxTerms; ++k) {
    const double p = half ? k + 0.5 : static_cast<double>(k);
    // q^(p^2) cosh(2 p y) = (e^(-pi vt p^2 + 2p|y|) + e^(-pi vt p^2 - 2p|y|)) / 2
    const double grow = std::exp(-pv * p * p + 2.0 * p * ay);
    const double decay = std::exp(-pv * p * p - 2.0 * p * ay);
    if (grow < tol * (std::abs(head + sum) + tol) && k > 1) break;
    const double hyper = (partner == 1) ? (y >= 0 ? 1.0 : -1.0) * (grow - decay) : (grow + decay);
    const double sgn = alternating ? sign_of_parity(k) : 1.0;
    sum += sgn * hyper;
  }
  const double prefactor = std::exp(-z * z / (kPi * v)) / std::sqrt(v);
  return prefactor * (head + sum);
}

// Reduces a real argument into [-pi/2, pi/2], returning the sign picked up.
double reduce_real(int kind, double& z) {
  const double m = std::nearbyint(z / kPi);
  z -= m * kPi;
  return antiperiodic(kind) ? sign_of_parity(static_cast<long long>(m)) : 1.0;
}

// ---------------------------------------------------------------------------
// Complex argument, v >= 1. Returns (theta, d theta / dz).
std::pair<cplx, cplx> complex_series(int kind, cplx z, double v, double tol, bool want_prime) {
  double sign = 1.0;
  {
    const double m = std::nearbyint(z.real() / kPi);
    z -= m * kPi;
    if (antiperiodic(kind)) sign = sign_of_parity(static_cast<long long>(m));
  }
  // Quasi-periodicity: theta(z0 + m pi tau) = s q^(-m^2) exp(-2 i m z0) theta(z0),
  // s = (-1)^m for kinds 1 and 4.
  const double pv = kPi * v;
  const double mi = std::nearbyint(z.imag() / pv);
  const cplx z0 = z - cplx(0.0, mi * pv);
  cplx factor = 1.0;
  if (mi != 0.0) {
    const cplx expo = cplx(pv * mi * mi, 0.0) - cplx(0.0, 2.0 * mi) * z0;
    factor = std::exp(expo);
    if (kind == 1 || kind == 4) factor *= sign_of_parity(static_cast<long long>(mi));
  }

  const bool half = antiperiodic(kind);
  const bool alternating = (kind == 1 || kind == 4);
  const double ay = std::abs(z0.imag());
  cplx sum = half ? 0.0 : 1.0;
  cplx dsum = 0.0;
  for (int k = half ? 0 : 1; k < kMaxTerms; ++k) {
    const double p = half ? k + 0.5 : static_cast<double>(k);
    const double q = std::exp(-pv * p * p);
    // |sin(w)|, |cos(w)| <= cosh(Im w) <= exp(|Im w|)
    const double bound = 2.0 * std::exp(-pv * p * p + 2.0 * p * ay);
    if (bound < tol * (std::abs(sum) + tol) && k > 1) break;
    const double sgn = (alternating ? sign_of_parity(k) : 1.0) * 2.0 * q;
    const cplx w = 2.0 * p * z0;
    if (kind == 1) {
      sum += sgn * std::sin(w);
      if (want_prime) dsum += sgn * 2.0 * p * std::cos(w);
    } else {
      sum += sgn * std::cos(w);
      if (want_prime) dsum -= sgn * 2.0 * p * std::sin(w);
    }
  }
  cplx value = sign * factor * sum;
  cplx prime = 0.0;
  if (want_prime) {
    // d/dz [F(z0) theta(z0)] with dF/dz0 = -2 i m F.
    prime = sign * factor * (dsum - cplx(0.0, 2.0 * mi) * sum);
  }
  return {value, prime};
}

std::pair<cplx, cplx> complex_theta(int kind, cplx z, double v, double tol, bool want_prime) {
  if (v >= 1.0) return complex_series(kind, z, v, tol, want_prime);

  double sign = 1.0;
  {
    const double m = std::nearbyint(z.real() / kPi);
    z -= m * kPi;
    if (antiperiodic(kind)) sign = sign_of_parity(static_cast<long long>(m));
  }
  // (-i tau)^(1/2) theta_k(z|tau) = c_k exp(i tau' z^2/pi) theta_k'(z tau'|tau'),
  // tau = i v, tau' = i/v, c_1 = -i, otherwise 1.
  const cplx zt = cplx(0.0, 1.0 / v) * z;
  const auto [inner, inner_prime] =
      complex_series(modular_partner(kind), zt, 1.0 / v, tol, want_prime);
  const cplx gauss = std::exp(-z * z / (kPi * v)) / std::sqrt(v);
  const cplx c = (kind == 1) ? cplx(0.0, -1.0) : cplx(1.0, 0.0);
  const cplx value = sign * c * gauss * inner;
  cplx prime = 0.0;
  if (want_prime) {
    prime = sign * c * gauss * (-2.0 * z / (kPi * v) * inner + cplx(0.0, 1.0 / v) * inner_prime);
  }
  return {value, prime};
}

}  // namespace

double jacobi_theta_real(int kind, double z, double v, double tol) {
  check_kind(kind);
  check_v_tol(v, tol);
  const double sign = reduce_real(kind, z);
  if (v >= 1.0) {
    const double head = antiperiodic(kind) ? 0.0 : 1.0;
    return sign * (head + real_series_tail(kind, z, v, tol));
  }
  return sign * real_transformed(kind, z, v, tol);
}

std::complex<double> jacobi_theta(int kind, const ThetaArg& arg) {
  check_kind(kind);
  check_v_tol(arg.v, arg.tol);
  if (arg.z.imag() == 0.0) {
    return {jacobi_theta_real(kind, arg.z.real(), arg.v, arg.tol), 0.0};
  }
  return complex_theta(kind, arg.z, arg.v, arg.tol, false).first;
}

std::complex<double> jacobi_theta_prime(int kind, const ThetaArg& arg) {
  check_kind(kind);
  check_v_tol(arg.v, arg.tol);
  return complex_theta(kind, arg.z, arg.v, arg.tol, true).second;
}

double theta3_minus_one(double z, double v, double tol) {
  check_v_tol(v, tol);
  if (v < 1.0) throw DomainError("theta3_minus_one requires v >= 1");
  return real_series_tail(3, z, v, tol, true);
}

double jacobi_theta_zero(int kind, double v, double tol) {
  if (kind < 2 || kind > 4) {
    throw DomainError("jacobi_theta_zero supports kinds 2, 3 and 4");
  }
  check_v_tol(v, tol);
  if (v < 1.0) {
    return jacobi_theta_zero(modular_partner(kind), 1.0 / v, tol) / std::sqrt(v);
  }
  const double head = (kind == 2) ? 0.0 : 1.0;
  return head + real_series_tail(kind, 0.0, v, tol);
}

double theta1_prime_zero(double v, double tol) {
  check_v_tol(v, tol);
  if (v < 1.0) {
    // Differentiating the modular relation at z = 0 gives a factor v^(-3/2).
    return theta1_prime_zero(1.0 / v, tol) / (v * std::sqrt(v));
  }
  const double pv = kPi * v;
  double sum = 0.0;
  for (int k = 0; k < kMaxTerms; ++k) {
    const double p = k + 0.5;
    const double term = 4.0 * p * std::exp(-pv * p * p);
    if (k > 0 && term < tol * std::abs(sum)) break;
    sum += sign_of_parity(k) * term;
  }
  return sum;
}

double theta3_minus_theta4_zero(double v, double tol) {
  check_v_tol(v, tol);
  if (v < 1.0) {
    const double vt = 1.0 / v;
    return (1.0 + real_series_tail(3, 0.0, vt, tol) - real_series_tail(2, 0.0, vt, tol)) /
           std::sqrt(v);
  }
  const double pv = kPi * v;
  double sum = 0.0;
  for (int k = 1; k < kMaxTerms; k += 2) {
    const double term = 4.0 * std::exp(-pv * k * k);
    if (k > 1 && term < tol * sum) break;
    sum += term;
  }
  return sum;
}

const LemniscaticConstants& lemniscatic_constants() {
  static const LemniscaticConstants constants = [] {
    LemniscaticConstants c{};
    c.theta3_0 = jacobi_theta_zero(3, 1.0);
    c.theta2_0 = jacobi_theta_zero(2, 1.0);
    c.theta4_0 = jacobi_theta_zero(4, 1.0);
    c.theta1p_0 = theta1_prime_zero(1.0);
    c.bigK = kPi * c.theta3_0 * c.theta3_0 / 2.0;
    return c;
  }();
  return constants;
}

double tail_bound(int n, double a, double v) {
  if (n < 1) throw DomainError("tail_bound requires n >= 1");
  if (!(a > 0.0)) throw DomainError("tail_bound requires a > 0");
  if (!(v >= 1.0)) throw DomainError("tail_bound is certified only for v >= 1");
  const double z = kPi * kPi * v / (a * a);
  const double e = std::exp(-z);
  const double half_n = 0.5 * n;
  const double sphere = std::pow(kPi, half_n) / std::tgamma(half_n);
  const double expint = 2.0 * e / z;
  return 2.0 * n * e + sphere * expint;
}

}  // namespace madelung
