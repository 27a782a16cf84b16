#include "madelung/lattice_sums.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include <boost/math/special_functions/gamma.hpp>

#include "madelung/errors.hpp"
#include "madelung/format.hpp"
#include "madelung/parallel.hpp"

namespace madelung {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxRadius = 200;
constexpr double kMaxTerms = 2e9;

void require_sum_dim(const CrystalSpec& spec) {
  spec.validate();
  if (spec.n == 2) {
    throw UnsupportedError(
        "the n = 2 lattice sum of logarithmic potentials does not converge under any "
        "ordering; use the closed-form-2d method");
  }
  if (spec.n < 3) throw UnsupportedError("lattice sums require n >= 3");
}

// Charge of the site a k relative to the origin charge, 0 if no site.
int site_charge(Family family, const std::vector<long>& k) {
  if (family == Family::kNaCl) {
    long s = 0;
    for (long c : k) s += c;
    return (s % 2 == 0) ? +1 : -1;
  }
  const bool odd = (k[0] % 2) != 0;
  for (long c : k) {
    if (((c % 2) != 0) != odd) return 0;
  }
  return odd ? -1 : +1;
}

// Calls visit(k) for every k in [-R, R]^(n-1), prefixed by first.
template <class Visit>
void for_each_in_slab(int n, long R, long first, Visit&& visit) {
  std::vector<long> k(static_cast<std::size_t>(n), -R);
  k[0] = first;
  if (n == 1) {
    visit(k);
    return;
  }
  while (true) {
    visit(k);
    std::size_t j = 1;
    while (j < k.size() && k[j] == R) k[j++] = -R;
    if (j == k.size()) break;
    ++k[j];
  }
}

struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  [[nodiscard]] double value() const { return sum + comp; }
};

double coulomb_constant(int n) {
  const double h = n / 2.0;
  return std::tgamma(h) / ((h - 1.0) * std::pow(kPi, h - 1.0));
}

}  // namespace

double alpha_coefficient(int n, double a) {
  if (n < 3) throw DomainError("alpha_coefficient requires n >= 3");
  if (!(a > 0.0)) throw DomainError("alpha_coefficient requires a > 0");
  return coulomb_constant(n) / std::pow(a, n - 2.0);
}

std::vector<PartialSum> naive_partial_sums(const CrystalSpec& spec, const SumOrdering& ordering) {
  require_sum_dim(spec);
  if (!(ordering.radius_max >= 0.0) || ordering.radius_max > kMaxRadius) {
    throw DomainError("radius_max must lie in [0, 200]");
  }
  const long R = static_cast<long>(std::floor(ordering.radius_max));
  if (R == 0) return {};
  if (std::pow(2.0 * R + 1.0, spec.n) > kMaxTerms) {
    throw DomainError("naive_partial_sums: too many lattice points for this n and radius");
  }
  const int n = spec.n;
  const double power = (n - 2) / 2.0;
  const bool cubes = ordering.kind == OrderingKind::kExpandingCubes;

  // One row of per-shell sums per first-coordinate slab, reduced in slab order.
  const auto slabs = static_cast<std::size_t>(2 * R + 1);
  std::vector<std::vector<double>> rows(slabs, std::vector<double>(static_cast<std::size_t>(R) + 1, 0.0));
  parallel_for(slabs, [&](std::size_t s) {
    const long first = static_cast<long>(s) - R;
    std::vector<Neumaier> acc(static_cast<std::size_t>(R) + 1);
    for_each_in_slab(n, R, first, [&](const std::vector<long>& k) {
      long norm2 = 0;
      long inf = 0;
      for (long c : k) {
        norm2 += c * c;
        inf = std::max(inf, std::abs(c));
      }
      if (norm2 == 0) return;
      const int q = site_charge(spec.family, k);
      if (q == 0) return;
      long shell = inf;
      if (!cubes) {
        shell = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(norm2))));
        while (shell * shell < norm2) ++shell;
        while (shell > 0 && (shell - 1) * (shell - 1) >= norm2) --shell;
        if (shell > R) return;
      }
      const double d = static_cast<double>(norm2);
      const double term = n == 3 ? 1.0 / std::sqrt(d) : n == 4 ? 1.0 / d : std::pow(d, -power);
      acc[static_cast<std::size_t>(shell)].add(q * term);
    });
    for (std::size_t r = 0; r < acc.size(); ++r) rows[s][r] = acc[r].value();
  });

  const double alpha = alpha_coefficient(n, spec.a);
  std::vector<PartialSum> out;
  out.reserve(static_cast<std::size_t>(R));
  Neumaier running;
  for (long r = 1; r <= R; ++r) {
    Neumaier shell;
    for (std::size_t s = 0; s < slabs; ++s) shell.add(rows[s][static_cast<std::size_t>(r)]);
    running.add(shell.value());
    out.push_back({static_cast<int>(r), alpha * running.value()});
  }
  return out;
}

void write_csv(const std::vector<PartialSum>& sums, std::ostream& out) {
  out << "radius,partial_sum\n";
  for (const PartialSum& p : sums) out << p.radius << ',' << format_double(p.partial_sum) << '\n';
}

double ewald_value(const CrystalSpec& spec, double splitting) {
  require_sum_dim(spec);
  if (!(splitting > 0.0) || !std::isfinite(splitting)) throw DomainError("splitting must be > 0");
  const int n = spec.n;
  const double a = spec.a;
  const double h = n / 2.0;
  const double cn = coulomb_constant(n);
  const double beta = splitting * std::sqrt(kPi) / (2.0 * a);

  // Real space: erfc-type tails are below 1e-20 once beta r > 7.
  const long kr = static_cast<long>(std::ceil(7.0 / (beta * a))) + 1;
  const auto slabs = static_cast<std::size_t>(2 * kr + 1);
  std::vector<double> real_rows(slabs, 0.0);
  parallel_for(slabs, [&](std::size_t s) {
    Neumaier acc;
    for_each_in_slab(n, kr, static_cast<long>(s) - kr, [&](const std::vector<long>& k) {
      long norm2 = 0;
      for (long c : k) norm2 += c * c;
      if (norm2 == 0) return;
      const int q = site_charge(spec.family, k);
      if (q == 0) return;
      const double r2 = a * a * static_cast<double>(norm2);
      const double x = beta * beta * r2;
      if (x > 60.0) return;
      acc.add(q * boost::math::gamma_q(h - 1.0, x) / std::pow(r2, h - 1.0));
    });
    real_rows[s] = acc.value();
  });
  Neumaier real;
  for (double v : real_rows) real.add(v);

  // Reciprocal space: G = (pi/a) m, Gaussian factor below 1e-20 once G > 13.6 beta.
  const long kg = static_cast<long>(std::ceil(13.6 * beta * a / kPi)) + 1;
  const auto gslabs = static_cast<std::size_t>(2 * kg + 1);
  std::vector<double> recip_rows(gslabs, 0.0);
  parallel_for(gslabs, [&](std::size_t s) {
    Neumaier acc;
    for_each_in_slab(n, kg, static_cast<long>(s) - kg, [&](const std::vector<long>& m) {
      long norm2 = 0;
      long msum = 0;
      bool all_odd = true;
      for (long c : m) {
        norm2 += c * c;
        msum += c;
        if (c % 2 == 0) all_odd = false;
      }
      if (norm2 == 0) return;
      double structure = 0.0;
      if (spec.family == Family::kNaCl) {
        if (all_odd) structure = std::ldexp(1.0, n);
      } else if (msum % 2 != 0) {
        structure = 2.0;
      }
      if (structure == 0.0) return;
      const double g2 = kPi * kPi * static_cast<double>(norm2) / (a * a);
      acc.add(structure * std::exp(-g2 / (4.0 * beta * beta)) / g2);
    });
    recip_rows[s] = acc.value();
  });
  Neumaier recip;
  for (double v : recip_rows) recip.add(v);

  const double volume = std::pow(2.0 * a, n);
  const double recip_pref = 4.0 * std::pow(kPi, h) / (std::tgamma(h - 1.0) * volume);
  const double self = std::pow(beta, n - 2.0) / std::tgamma(h);
  return cn * (real.value() + recip_pref * recip.value() - self);
}

MadelungResult ewald_madelung(const CrystalSpec& spec, double splitting) {
  const double value = ewald_value(spec, splitting);
  const double other = splitting <= 1.0 ? std::min(2.0, splitting * 1.6) : std::max(0.5, splitting / 1.6);
  const double check = ewald_value(spec, other);
  const double diff = std::abs(value - check);
  if (diff > 1e-10 * std::max(1.0, std::abs(value))) {
    throw InternalConsistencyError("Ewald splitting self-check failed: " + format_double(value) +
                                   " vs " + format_double(check));
  }
  MadelungResult out;
  out.value = value;
  out.method = Method::kEwaldOracle;
  out.error_estimate = diff;
  out.spec = spec;
  return out;
}

}  // namespace madelung
