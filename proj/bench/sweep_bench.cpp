// Serial reference against the OpenMP sweep on the same seed grids.
#include <benchmark/benchmark.h>

#include "sfk/sweep.hpp"

namespace {

using namespace sfk;

std::vector<PhasePoint> grid(int steps) {
  return SeedGrid::parse("-0.9:9:" + std::to_string(steps) + ",-6:4:" + std::to_string(steps)).points();
}

Execution mode(const benchmark::State& state) { return state.range(1) ? Execution::Parallel : Execution::Serial; }

void BM_ClassifySweep(benchmark::State& state) {
  const auto seeds = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(classify_sweep(Dimension(2), seeds, mode(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(seeds.size()));
}

void BM_LevelDriftSweep(benchmark::State& state) {
  const auto seeds = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(level_drift_sweep(Dimension(3), seeds, {}, mode(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(seeds.size()));
}

void BM_DichotomySweep(benchmark::State& state) {
  const auto seeds = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dichotomy_sweep(Dimension(2), seeds, {}, mode(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(seeds.size()));
}

}  // namespace

BENCHMARK(BM_ClassifySweep)->ArgsProduct({{100}, {0, 1}})->ArgNames({"steps", "parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LevelDriftSweep)->ArgsProduct({{20}, {0, 1}})->ArgNames({"steps", "parallel"})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DichotomySweep)->ArgsProduct({{20}, {0, 1}})->ArgNames({"steps", "parallel"})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
