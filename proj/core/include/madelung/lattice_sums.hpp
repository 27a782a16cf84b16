#pragma once

#include <iosfwd>
#include <vector>

#include "madelung/crystal.hpp"
#include "madelung/madelung.hpp"

namespace madelung {

enum class OrderingKind {
  kExpandingCubes,   // shell r holds k with max_j |k_j| = r
  kExpandingSpheres  // shell r holds k with r - 1 < |k| <= r
};

struct SumOrdering {
  OrderingKind kind = OrderingKind::kExpandingCubes;
  double radius_max = 40.0;  // shells 1 .. floor(radius_max), at most 200
};

struct PartialSum {
  int radius;
  double partial_sum;
};

// alpha(n) = Gamma(n/2) / ((n/2 - 1) pi^(n/2 - 1) a^(n-2)), n >= 3.
[[nodiscard]] double alpha_coefficient(int n, double a);

// Running sums alpha(n) sum q_k / |k|^(n-2) over sites a k != 0, one entry per
// shell. NaCl: q_k = (-1)^|k|. CsCl: +1 for k in (2Z)^n, -1 for k in (2Z+1)^n.
// n = 2 throws UnsupportedError.
[[nodiscard]] std::vector<PartialSum> naive_partial_sums(const CrystalSpec& spec,
                                                         const SumOrdering& ordering);

// CSV with header radius,partial_sum.
void write_csv(const std::vector<PartialSum>& sums, std::ostream& out);

// Ewald evaluation of the same lattice sum with Gaussian width
// beta = splitting * sqrt(pi) / (2a). The value is recomputed at a second
// splitting in [0.5, 2]; a mismatch above 1e-10 throws InternalConsistencyError.
[[nodiscard]] MadelungResult ewald_madelung(const CrystalSpec& spec, double splitting = 1.0);

// One Ewald evaluation, without the self-check.
[[nodiscard]] double ewald_value(const CrystalSpec& spec, double splitting);

}  // namespace madelung
