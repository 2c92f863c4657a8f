#include <benchmark/benchmark.h>

#include <cmath>

#include "frost/energy/trace_ops.hpp"
#include "frost/simdev/catalog.hpp"
#include "frost/simdev/epoch.hpp"

namespace {

void BM_IntegrateSeries(benchmark::State& state) {
  frost::hal::PowerSeries s;
  for (int i = 0; i < state.range(0); ++i) {
    s.push_back({0.1 * i, 200.0 + 50.0 * std::sin(0.01 * i)});
  }
  for (auto _ : state) benchmark::DoNotOptimize(frost::energy::integrate_series(s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IntegrateSeries)->Arg(1000)->Arg(100000);

void BM_SimulatedEpoch(benchmark::State& state) {
  const auto arch = frost::simdev::archetype("mobilenet-like");
  for (auto _ : state) {
    benchmark::DoNotOptimize(frost::simdev::run_epoch(arch.device, arch.workload, 0.6));
  }
}
BENCHMARK(BM_SimulatedEpoch)->Unit(benchmark::kMillisecond);

}  // namespace
