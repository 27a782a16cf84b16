#pragma once

#include <span>
#include <vector>

#include "madelung/special_functions.hpp"

namespace madelung {

// A point of the flat torus R^n / (2a Z)^n. Coordinates are stored reduced to
// [0, 2a); a coordinate within 1e-12*a of 0 or 2a snaps to 0.
class TorusPoint {
 public:
  static constexpr double kSnapTolerance = 1e-12;

  TorusPoint(std::vector<double> coords, double a);

  [[nodiscard]] int dim() const noexcept { return static_cast<int>(coords_.size()); }
  [[nodiscard]] double a() const noexcept { return a_; }
  [[nodiscard]] double cell_side() const noexcept { return 2.0 * a_; }
  [[nodiscard]] std::span<const double> coords() const noexcept { return coords_; }
  [[nodiscard]] double operator[](int j) const { return coords_[static_cast<std::size_t>(j)]; }
  [[nodiscard]] bool is_lattice_point() const noexcept { return lattice_point_; }

  // Volume |T| = (2a)^n of the fundamental cell.
  [[nodiscard]] double cell_volume() const noexcept;

  // x - y reduced onto the torus. Both points must share n and a.
  [[nodiscard]] TorusPoint minus(const TorusPoint& other) const;
  [[nodiscard]] TorusPoint shifted(std::span<const double> offset) const;

  // Distance to the nearest lattice point, using minimum-image coordinates.
  [[nodiscard]] double distance_to_lattice() const noexcept;

 private:
  std::vector<double> coords_;
  double a_;
  bool lattice_point_ = false;
};

// Theta(x|v) = prod_j theta_3(pi x_j / 2a | i pi v / a^2), always through the
// one-dimensional product.
[[nodiscard]] double big_theta(const TorusPoint& x, double v, double tol = kDefaultThetaTol);

// 1 - Theta(x|v). Above v = a^2/pi it is summed as -expm1(sum_j log1p(delta_j))
// with delta_j = theta_3 - 1 obtained directly, so large-v values keep full
// relative accuracy.
[[nodiscard]] double one_minus_big_theta(const TorusPoint& x, double v,
                                         double tol = kDefaultThetaTol);

// Same as one_minus_big_theta, but with the modular parameter already scaled:
// w = pi v / a^2, so the factors are theta_3(pi x_j / 2a | i w).
[[nodiscard]] double one_minus_big_theta_scaled(const TorusPoint& x, double w,
                                                double tol = kDefaultThetaTol);

// Central-difference estimate of (Laplacian - d/dv) Theta at (x, v).
// Diagnostic only; the error is O(h^2).
[[nodiscard]] double heat_residual(const TorusPoint& x, double v, double h);

// sum over k in {0,1}^n of (-1)^|k| Theta(a k | v), in collapsed form
// (theta_3(0|i pi v/a^2) - theta_4(0|i pi v/a^2))^n.
[[nodiscard]] double alternating_cell_sum(int n, double v, double a,
                                          double tol = kDefaultThetaTol);

}  // namespace madelung
