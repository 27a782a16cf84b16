#include <benchmark/benchmark.h>

#include "madelung/crystal.hpp"
#include "madelung/green.hpp"
#include "madelung/lattice_sums.hpp"
#include "madelung/madelung.hpp"
#include "madelung/special_functions.hpp"

namespace {

using namespace madelung;

void BM_JacobiTheta(benchmark::State& state) {
  const double v = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_theta(1, {{0.4, 0.3}, v}));
}
BENCHMARK(BM_JacobiTheta)->Arg(3)->Arg(10)->Arg(50);

void BM_PsiIntegral(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const TorusPoint x(std::vector<double>(static_cast<std::size_t>(n), 0.7), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(psi_integral(x).value);
}
BENCHMARK(BM_PsiIntegral)->DenseRange(1, 4);

void BM_Psi2dClosed(benchmark::State& state) {
  const TorusPoint x({0.3, 1.1}, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(psi_2d_closed(x, Normalization::kZeroMean).value);
}
BENCHMARK(BM_Psi2dClosed);

void BM_FinitePartSubtracted(benchmark::State& state) {
  const CrystalSpec spec{Family::kNaCl, static_cast<int>(state.range(0)), 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(finite_part_subtracted(spec).value);
}
BENCHMARK(BM_FinitePartSubtracted)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_FinitePartEpsilon(benchmark::State& state) {
  const CrystalSpec spec{Family::kNaCl, 3, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(finite_part_epsilon(spec, 1e-6).value);
}
BENCHMARK(BM_FinitePartEpsilon)->Unit(benchmark::kMillisecond);

void BM_Madelung2d(benchmark::State& state) {
  const CrystalSpec spec{Family::kNaCl, 2, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(madelung_2d(spec).value);
}
BENCHMARK(BM_Madelung2d)->Unit(benchmark::kMicrosecond);

void BM_Ewald(benchmark::State& state) {
  const CrystalSpec spec{Family::kNaCl, static_cast<int>(state.range(0)), 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(ewald_value(spec, 1.0));
}
BENCHMARK(BM_Ewald)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_NaivePartialSums(benchmark::State& state) {
  const CrystalSpec spec{Family::kNaCl, 3, 1.0};
  const SumOrdering ord{OrderingKind::kExpandingCubes, static_cast<double>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(naive_partial_sums(spec, ord).size());
}
BENCHMARK(BM_NaivePartialSums)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_FieldGrid(benchmark::State& state) {
  const CrystalSpec spec{Family::kCsCl, static_cast<int>(state.range(0)), 1.0};
  const int res = spec.n == 2 ? 64 : 8;
  for (auto _ : state) benchmark::DoNotOptimize(field_grid(spec, res).size());
}
BENCHMARK(BM_FieldGrid)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
