#include "madelung/lattice_theta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "madelung/errors.hpp"

namespace madelung {
namespace {

constexpr double kPi = std::numbers::pi;

void check_v(double v) {
  if (!(v > 0.0)) throw DomainError("Theta(x|v) requires v > 0");
}

}  // namespace

TorusPoint::TorusPoint(std::vector<double> coords, double a) : coords_(std::move(coords)), a_(a) {
  if (coords_.empty()) throw DomainError("torus dimension must be >= 1");
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("torus half-period a must be > 0");
  const double side = 2.0 * a;
  const double snap = kSnapTolerance * a;
  lattice_point_ = true;
  for (double& c : coords_) {
    if (!std::isfinite(c)) throw DomainError("torus coordinates must be finite");
    c -= side * std::floor(c / side);
    if (c < snap || c > side - snap) c = 0.0;
    if (c != 0.0) lattice_point_ = false;
  }
}

double TorusPoint::cell_volume() const noexcept { return std::pow(2.0 * a_, dim()); }

TorusPoint TorusPoint::minus(const TorusPoint& other) const {
  if (other.dim() != dim() || other.a_ != a_) {
    throw DomainError("torus points belong to different tori");
  }
  std::vector<double> d(coords_.size());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = coords_[j] - other.coords_[j];
  return {std::move(d), a_};
}

TorusPoint TorusPoint::shifted(std::span<const double> offset) const {
  if (static_cast<int>(offset.size()) != dim()) throw DomainError("offset dimension mismatch");
  std::vector<double> d(coords_);
  for (std::size_t j = 0; j < d.size(); ++j) d[j] += offset[j];
  return {std::move(d), a_};
}

double TorusPoint::distance_to_lattice() const noexcept {
  double s = 0.0;
  for (double c : coords_) {
    const double m = std::min(c, 2.0 * a_ - c);
    s += m * m;
  }
  return std::sqrt(s);
}

double big_theta(const TorusPoint& x, double v, double tol) {
  check_v(v);
  const double a = x.a();
  const double w = kPi * v / (a * a);
  double product = 1.0;
  for (double c : x.coords()) {
    product *= jacobi_theta_real(3, kPi * c / (2.0 * a), w, tol);
  }
  return product;
}

double one_minus_big_theta_scaled(const TorusPoint& x, double w, double tol) {
  check_v(w);
  const double a = x.a();
  if (w < 1.0) {
    double product = 1.0;
    for (double c : x.coords()) product *= jacobi_theta_real(3, kPi * c / (2.0 * a), w, tol);
    return 1.0 - product;
  }
  double log_sum = 0.0;
  for (double c : x.coords()) {
    log_sum += std::log1p(theta3_minus_one(kPi * c / (2.0 * a), w, tol));
  }
  return -std::expm1(log_sum);
}

double one_minus_big_theta(const TorusPoint& x, double v, double tol) {
  check_v(v);
  return one_minus_big_theta_scaled(x, kPi * v / (x.a() * x.a()), tol);
}

double heat_residual(const TorusPoint& x, double v, double h) {
  if (!(h > 0.0) || !(v > h)) throw DomainError("heat_residual requires v > h > 0");
  if (x.distance_to_lattice() < 3.0 * h) {
    throw DomainError("heat_residual requires x at least 3h from the lattice");
  }
  const double center = big_theta(x, v);
  double laplacian = 0.0;
  std::vector<double> step(static_cast<std::size_t>(x.dim()), 0.0);
  for (int j = 0; j < x.dim(); ++j) {
    step[static_cast<std::size_t>(j)] = h;
    const double plus = big_theta(x.shifted(step), v);
    step[static_cast<std::size_t>(j)] = -h;
    const double minus = big_theta(x.shifted(step), v);
    step[static_cast<std::size_t>(j)] = 0.0;
    laplacian += (plus - 2.0 * center + minus) / (h * h);
  }
  const double dv = (big_theta(x, v + h) - big_theta(x, v - h)) / (2.0 * h);
  return laplacian - dv;
}

double alternating_cell_sum(int n, double v, double a, double tol) {
  if (n < 1) throw DomainError("alternating_cell_sum requires n >= 1");
  check_v(v);
  if (!(a > 0.0)) throw DomainError("alternating_cell_sum requires a > 0");
  const double d = theta3_minus_theta4_zero(kPi * v / (a * a), tol);
  return std::pow(d, n);
}

}  // namespace madelung
