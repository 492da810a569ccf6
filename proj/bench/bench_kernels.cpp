// Serial reference vs OpenMP kernels for the two hot loops: the S_K
// permutation sum behind exact moments, and block-seeded MC accumulation.

#include <benchmark/benchmark.h>

#include "rho/montecarlo.hpp"
#include "rho/permutation_sum.hpp"
#include "rho/quantum.hpp"

namespace {

rho::ObservableList random_observables(int K, int N) {
  rho::Rng rng = rho::make_stream(3, 0);
  std::normal_distribution<double> normal;
  rho::ObservableList C(static_cast<std::size_t>(K), rho::ComplexMatrix(N, N));
  for (auto& m : C)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) m(i, j) = rho::Complex(normal(rng), normal(rng));
  return C;
}

void BM_TraceSumSerial(benchmark::State& state) {
  const auto C = random_observables(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(rho::kernels::trace_cycle_sum_serial(C));
}

void BM_TraceSumParallel(benchmark::State& state) {
  const auto C = random_observables(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(rho::kernels::trace_cycle_sum_parallel(C));
}

void BM_PurityMc(benchmark::State& state, bool parallel) {
  for (auto _ : state)
    benchmark::DoNotOptimize(rho::estimate_purity(3, state.range(0), 1, {.parallel = parallel}));
}

}  // namespace

BENCHMARK(BM_TraceSumSerial)->DenseRange(6, 8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TraceSumParallel)->DenseRange(6, 8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_PurityMc, serial, false)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_PurityMc, parallel, true)->Arg(200000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
