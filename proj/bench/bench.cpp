// Serial reference versus OpenMP kernels on the same work. Arg 0 runs the
// serial path, arg N >= 1 the parallel path with N threads.

#include <benchmark/benchmark.h>

#include "ebound/parallel.hpp"
#include "ebound/search.hpp"
#include "ebound/witsenhausen.hpp"

using namespace ebound;

namespace {

Exec setup(const benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  if (n == 0) return Exec::kSerial;
  set_num_threads(n);
  return Exec::kParallel;
}

void BM_CostSurface(benchmark::State& state) {
  const Exec exec = setup(state);
  const auto ks = logspace(-2, 2, 9), sigmas = logspace(-2, 2, 9);
  for (auto _ : state) benchmark::DoNotOptimize(cost_ratio_surface(ks, sigmas, LowerBoundKind::kNew, {}, {}, exec));
}

void BM_MmseSurface(benchmark::State& state) {
  const Exec exec = setup(state);
  const auto powers = logspace(-2, 1, 12), sigmas = logspace(-1, 1, 12);
  for (auto _ : state) benchmark::DoNotOptimize(mmse_ratio_surface(powers, sigmas, 0.0, LowerBoundKind::kNew, {}, exec));
}

void BM_PowerSurface(benchmark::State& state) {
  const Exec exec = setup(state);
  const auto fractions = linspace(0.1, 0.9, 5), sigmas = logspace(-1, 1, 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(power_ratio_surface(fractions, sigmas, 0.0, LowerBoundKind::kNew, {}, {}, exec));
}

void BM_MonteCarlo(benchmark::State& state) {
  const Exec exec = setup(state);
  for (auto _ : state) benchmark::DoNotOptimize(mc_lmmse_check(1.0, 1.0, {0.6, 0.3}, {1'000'000, 1}, exec));
}

}  // namespace

BENCHMARK(BM_CostSurface)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MmseSurface)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PowerSurface)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarlo)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
