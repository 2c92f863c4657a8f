#include <benchmark/benchmark.h>

#include <vector>

#include "frost/fitcore/fit.hpp"

using namespace frost::fitcore;

namespace {

std::vector<FitPoint> bowl_points() {
  const FitCoefficients c{0.05, 3, 0, -2, 10, 6, 3};
  std::vector<FitPoint> pts;
  for (int i = 0; i < 8; ++i) {
    const double x = 0.3 + 0.1 * i;
    pts.push_back({x, eval_f(c, x)});
  }
  return pts;
}

void BM_FitCurve(benchmark::State& state) {
  const auto pts = bowl_points();
  FitOptions o;
  o.starts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fit_curve(pts, o));
}
BENCHMARK(BM_FitCurve)->Arg(1)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_FindMinimum(benchmark::State& state) {
  const auto fit = fit_curve(bowl_points());
  for (auto _ : state) benchmark::DoNotOptimize(find_minimum(fit, 0.3, 1.0));
}
BENCHMARK(BM_FindMinimum)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
