// Serial reference versus OpenMP paths of the trial-parallel kernels.
#include <benchmark/benchmark.h>

#include "blockfade/analysis.hpp"
#include "blockfade/identify.hpp"

using namespace blockfade;

namespace {

const Dims kDims = Dims::make(2, 3, 4, 1, 2);
const Dims kLarge = Dims::make(3, 6, 8, 2, 3);

Execution mode(const benchmark::State& st) { return st.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_genericity_probe(benchmark::State& st) {
  const PilotAssignment pa = build_pilot_sets(kLarge);
  for (auto _ : st) benchmark::DoNotOptimize(genericity_probe(kLarge, pa, 200, 7, ColoringSource::Generic, mode(st)));
}

void BM_mc_logdet(benchmark::State& st) {
  const PilotAssignment pa = build_pilot_sets(kDims);
  const ColoringMatrix Z = gaussian_coloring(kDims, 11);
  for (auto _ : st) benchmark::DoNotOptimize(mc_logdet(Z, kDims, pa, 5000, 3, mode(st)));
}

void BM_recovery_trials(benchmark::State& st) {
  const PilotAssignment pa = build_pilot_sets(kDims);
  for (auto _ : st)
    benchmark::DoNotOptimize(run_recovery_trials(kDims, pa, 200, 5, ColoringSource::Generic, 1e-2, mode(st)));
}

void BM_toy_log_abs(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(mc_log_abs_gaussian(1'000'000, 1, mode(st)));
}

void BM_figure1(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(figure1_curves(2, 400, 8, mode(st)));
}

}  // namespace

// arg 0 = serial reference, 1 = OpenMP
BENCHMARK(BM_genericity_probe)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_mc_logdet)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_recovery_trials)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_toy_log_abs)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_figure1)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
