#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "madelung/crystal.hpp"
#include "madelung/quadrature.hpp"

namespace madelung {

enum class Method { kEpsilonLimit, kSubtracted, kClosedForm2d, kEwaldOracle };

[[nodiscard]] std::string_view to_string(Method method);
[[nodiscard]] Method parse_method(std::string_view name);

struct MadelungResult {
  double value = 0.0;
  Method method = Method::kSubtracted;
  std::optional<double> eps;
  double error_estimate = 0.0;
  CrystalSpec spec;
  // Symbolic value when one is known (n = 2).
  std::optional<std::string> exact_form;
};

// {schema: 1, family, n, a, convention, method, value, eps, error_estimate[, exact_form]}
[[nodiscard]] std::string to_json(const MadelungResult& result);

struct BindingPotential {
  TorusPoint site;
  int charge = 0;
  // Closed-form limit of V + 2 q log(r / horizon) at the site.
  double value = 0.0;
  double horizon = 0.0;
  // The same limit by Richardson extrapolation over r = 1e-4 a, 1e-5 a, 1e-6 a.
  double extrapolated = 0.0;
  double extrapolation_error = 0.0;
};

// Origin-potential integrand in the modular variable, prefactor excluded:
//   NaCl  (theta_3(0|iv) - theta_4(0|iv))^n
//   CsCl  theta_3(0|iv)^n - theta_4(0|iv)^n
// Behaves like v^(-n/2) as v -> 0.
[[nodiscard]] double origin_integrand(const CrystalSpec& spec, double v);

// origin_integrand(v) - v^(-n/2), evaluated without cancellation for v < 1.
[[nodiscard]] double origin_integrand_subtracted(const CrystalSpec& spec, double v);

// 1 / (2^(n-2) a^(n-2)).
[[nodiscard]] double finite_part_prefactor(const CrystalSpec& spec);

// prefactor * (integral_eps^inf f dv - eps^(1 - n/2) / (n/2 - 1)), n >= 3,
// eps in (0, 0.1]. The error estimate adds |M(eps) - M(eps/4)| to the
// quadrature error. n < 3 throws UnsupportedError.
[[nodiscard]] MadelungResult finite_part_epsilon(const CrystalSpec& spec, double eps,
                                                 const QuadratureConfig& cfg = {});

// prefactor * (int_0^1 (f - v^(-n/2)) + int_1^inf f - 1/(n/2 - 1)), n >= 3.
[[nodiscard]] MadelungResult finite_part_subtracted(const CrystalSpec& spec,
                                                    const QuadratureConfig& cfg = {});

// n = 2. Sites equivalent to the origin charge have horizon d_nn / K and
// binding potential 0; counter-ions have horizon d_nn and binding potential
// 2 log K.
[[nodiscard]] BindingPotential binding_potential_2d(const CrystalSpec& spec, int site_index);

// n = 2: M = U / (sites / 2) with U = (1/2) sum_sites q V_M.
[[nodiscard]] MadelungResult madelung_2d(const CrystalSpec& spec);

// Electrostatic energy per unit cell. n >= 3: NaCl 2^(n-1) M, CsCl M.
// n = 2: (1/2) sum q V_M from the binding potentials.
[[nodiscard]] double cell_energy(const CrystalSpec& spec, const MadelungResult& m);

// n = 2 diagnostic: lim (int_eps^inf f dv + log(eps / A)). Depends on A
// through -log A, so it does not define a constant.
[[nodiscard]] double ambiguous_finite_part_2d(const CrystalSpec& spec, double A,
                                              const QuadratureConfig& cfg = {});

inline constexpr std::string_view kExactForm2d = "−log(Γ(1/4)²/(4√π))";

}  // namespace madelung
