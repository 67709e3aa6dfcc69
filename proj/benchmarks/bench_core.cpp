#include <benchmark/benchmark.h>

#include <random>

#include "viscycle/fringe_lab.hpp"
#include "viscycle/gram.hpp"
#include "viscycle/inequalities.hpp"
#include "viscycle/optimizer.hpp"

namespace {

using namespace viscycle;

void BM_CycleValue(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto config = random_configuration(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(cycle_value(config));
}
BENCHMARK(BM_CycleValue)->DenseRange(3, 8);

void BM_MaximizeCycle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(maximize_cycle(n, 10, 1).s_value);
}
BENCHMARK(BM_MaximizeCycle)->DenseRange(3, 8)->Unit(benchmark::kMillisecond);

void BM_EstimateVisibility(benchmark::State& state) {
  const auto grid = phase_grid(static_cast<std::size_t>(state.range(0)));
  const auto scan = sample_counts(grid, ideal_fringe(0.8, 0.3, grid), 100000, 5);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_visibility(scan).v_hat);
}
BENCHMARK(BM_EstimateVisibility)->RangeMultiplier(2)->Range(8, 256);

void BM_RunExperiment(benchmark::State& state) {
  const auto spec = InterferometerSpec::symmetric(
      CoplanarConfig::uniform(static_cast<std::size_t>(state.range(0))).to_configuration().states());
  ExperimentOptions opts;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_experiment(spec, NoiseModel(1.0), opts).cycle.s_value);
  }
}
BENCHMARK(BM_RunExperiment)->DenseRange(3, 6)->Unit(benchmark::kMicrosecond);

void BM_MinR13(benchmark::State& state) {
  double r = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_r13(r, 0.8));
    r = r > 0.99 ? 0.5 : r + 1e-3;
  }
}
BENCHMARK(BM_MinR13);

}  // namespace
BENCHMARK_MAIN();
