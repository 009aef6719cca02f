// Serial reference vs OpenMP path for the data-parallel kernels.

#include "exolim/kernels.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using exolim::kernels::Exec;

exolim::SimConfig igex_like() {
  exolim::SimConfig cfg;
  cfg.binning = {4.5, 48.5, 1.0};
  cfg.continua.push_back(exolim::OneOverEContinuum{110.0});
  cfg.sigma = exolim::SigmaAssignment::Expected;
  return cfg;
}

void BM_GridMinimum(benchmark::State& state, Exec exec) {
  const auto spec = exolim::sample_spectrum(igex_like());
  for (auto _ : state)
    benchmark::DoNotOptimize(exolim::kernels::chi2_grid_minimum(
        spec, 0.0, 0.01, static_cast<std::size_t>(state.range(0)),
        exolim::BinModel::Integrated, exec));
}

void BM_Replicas(benchmark::State& state, Exec exec) {
  exolim::kernels::ReplicaStudy study;
  study.base = igex_like();
  study.replicas = static_cast<std::size_t>(state.range(0));
  study.fit_lo = 4.5;
  study.fit_hi = 48.5;
  study.grid_check = true;
  for (auto _ : state) benchmark::DoNotOptimize(exolim::kernels::run_replicas(study, exec));
}

} // namespace

BENCHMARK_CAPTURE(BM_GridMinimum, serial, Exec::Serial)->Arg(30001)->Arg(300001);
BENCHMARK_CAPTURE(BM_GridMinimum, openmp, Exec::Parallel)->Arg(30001)->Arg(300001);
BENCHMARK_CAPTURE(BM_Replicas, serial, Exec::Serial)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Replicas, openmp, Exec::Parallel)->Arg(50)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
