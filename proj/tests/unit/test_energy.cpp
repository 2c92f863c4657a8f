#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "fake_backend.hpp"
#include "frost/energy/accounting.hpp"
#include "frost/energy/trace_csv.hpp"
#include "frost/energy/trace_ops.hpp"
#include "frost/error.hpp"
#include "oracles.hpp"

using namespace frost;
using namespace frost::energy;
using hal::PowerDomain;

namespace {

PowerTrace constant_trace(double t_end, std::array<double, 3> watts, double dt = 1.0) {
  PowerTrace trace;
  for (double t = 0.0; t <= t_end + 1e-12; t += dt) {
    for (PowerDomain d : hal::kAllDomains) trace.append({t, watts[hal::index_of(d)], d});
  }
  return trace;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(Integrate, RampMatchesClosedForm) {
  // w(t) = 3 + 2t on [0, 10]: integral 30 + 100 = 130, exact on any grid.
  hal::PowerSeries s;
  for (double t : {0.0, 0.7, 2.0, 2.5, 6.1, 10.0}) s.push_back({t, 3.0 + 2.0 * t});
  EXPECT_LE(rel(integrate_series(s), 130.0), 1e-12);
}

TEST(Integrate, PiecewiseLinearTracesMatchHandSum) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dt(0.01, 0.5), w(0.0, 400.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> ts{0.0}, ws{w(rng)};
    for (int i = 0; i < 200; ++i) {
      ts.push_back(ts.back() + dt(rng));
      ws.push_back(w(rng));
    }
    hal::PowerSeries s;
    for (std::size_t i = 0; i < ts.size(); ++i) s.push_back({ts[i], ws[i]});
    EXPECT_LE(rel(integrate_series(s), oracle::piecewise_linear_area(ts, ws)), 1e-9);
  }
}

TEST(Integrate, SingleSampleIsNotIntegrable) {
  PowerTrace trace;
  trace.append({0.0, 5.0, PowerDomain::gpu});
  EXPECT_THROW(integrate_trace(trace, PowerDomain::gpu), NotIntegrable);
  EXPECT_THROW(integrate_series({}), NotIntegrable);
}

TEST(Interpolate, LinearInsideHeldOutside) {
  hal::PowerSeries s{{0.0, 10.0}, {2.0, 20.0}};
  EXPECT_DOUBLE_EQ(interpolate(s, 0.5), 12.5);
  EXPECT_DOUBLE_EQ(interpolate(s, -1.0), 10.0);
  EXPECT_DOUBLE_EQ(interpolate(s, 5.0), 20.0);
}

TEST(IntegrateWindow, CutsMidSegment) {
  // w = 10t on [0, 4]; window [1, 3] holds 10*(9-1)/2 = 40 J.
  hal::PowerSeries s{{0.0, 0.0}, {2.0, 20.0}, {4.0, 40.0}};
  EXPECT_NEAR(integrate_window(s, 1.0, 3.0), 40.0, 1e-12);
}

TEST(SumDomains, UnionGridAndMissingDomain) {
  std::map<PowerDomain, hal::PowerSeries> m{
      {PowerDomain::cpu, {{0.0, 1.0}, {2.0, 1.0}}},
      {PowerDomain::gpu, {{0.0, 0.0}, {1.0, 10.0}, {2.0, 0.0}}},
      {PowerDomain::dram, {{0.0, 5.0}, {2.0, 5.0}}}};
  const auto total = sum_domains(m);
  ASSERT_EQ(total.size(), 3u);
  EXPECT_DOUBLE_EQ(total[1].watts, 16.0);
  m.erase(PowerDomain::dram);
  EXPECT_THROW(sum_domains(m), MissingDomain);
}

TEST(NetEnergy, IdleSubtractionExample) {
  // 100 W for 10 s on the GPU against a 20 W idle mean: 800 J.
  const auto trace = constant_trace(10.0, {0.0, 100.0, 0.0});
  IdleBaseline idle;
  idle.mean_watts = {0.0, 20.0, 0.0};
  const auto e = net_energy(trace, idle);
  EXPECT_EQ(e.domain(PowerDomain::gpu), 800.0);
  EXPECT_EQ(e.total_j, 800.0);
  EXPECT_FALSE(e.clamped);
}

TEST(NetEnergy, FloorsAtZeroAndFlags) {
  const auto trace = constant_trace(10.0, {5.0, 100.0, 24.0});
  IdleBaseline idle;
  idle.mean_watts = {12.0, 20.0, 24.0};
  const auto e = net_energy(trace, idle);
  EXPECT_EQ(e.domain(PowerDomain::cpu), 0.0);
  EXPECT_TRUE(e.clamped);
  EXPECT_EQ(e.domain(PowerDomain::dram), 0.0);
}

TEST(NetEnergy, WindowUsesWindowDuration) {
  const auto trace = constant_trace(10.0, {10.0, 100.0, 24.0}, 0.1);
  IdleBaseline idle;
  idle.mean_watts = {10.0, 20.0, 24.0};
  const auto e = net_energy_window(trace, idle, 2.0, 7.0);
  EXPECT_NEAR(e.total_j, 80.0 * 5.0, 1e-9);
  EXPECT_NEAR(e.duration_s, 5.0, 1e-12);
  EXPECT_THROW(net_energy_window(trace, idle, 3.0, 3.0), InvalidArgument);
}

TEST(IdleBaseline, MeasuredOnBackendClock) {
  testing_support::FakeBackend b;
  b.watts = {12.0, 22.0, std::nullopt};
  const auto idle = measure_idle(b, 5.0);
  EXPECT_DOUBLE_EQ(idle.mean(PowerDomain::cpu), 12.0);
  EXPECT_DOUBLE_EQ(idle.mean(PowerDomain::gpu), 22.0);
  EXPECT_DOUBLE_EQ(idle.mean(PowerDomain::dram), 24.0);
  EXPECT_DOUBLE_EQ(idle.total(), 58.0);
  EXPECT_EQ(idle.t_m, 5.0);
  EXPECT_EQ(b.manual().now(), 5.0);
  EXPECT_THROW(measure_idle(b, 0.0), InvalidArgument);
}

TEST(IdleBaseline, TimeWeightedMean) {
  // 10 W for 9 s then a ramp to 100 W over 1 s: (90 + 55) / 10.
  PowerTrace trace;
  for (PowerDomain d : hal::kAllDomains) trace.append({0.0, 10.0, d});
  for (PowerDomain d : hal::kAllDomains) trace.append({9.0, 10.0, d});
  for (PowerDomain d : hal::kAllDomains) trace.append({10.0, 100.0, d});
  EXPECT_DOUBLE_EQ(idle_from_trace(trace).mean(PowerDomain::gpu), 14.5);
}

TEST(PipelineAccount, SumsProbesAndMainLessIdle) {
  const std::vector<double> probes{100.0, 200.0, 300.0};
  EnergyBreakdown main;
  main.total_j = 1000.0;
  const auto a = account_pipeline(probes, main, 50.0);
  EXPECT_EQ(a.probe_energy_j, 600.0);
  EXPECT_EQ(a.net_j, 1550.0);
  EXPECT_FALSE(a.clamped);
  const auto pre_netted = account_pipeline(probes, main);
  EXPECT_EQ(pre_netted.net_j, 1600.0);
  const auto floored = account_pipeline(probes, main, 5000.0);
  EXPECT_EQ(floored.net_j, 0.0);
  EXPECT_TRUE(floored.clamped);
}

TEST(TraceCsv, RoundTripsExactly) {
  PowerTrace trace("rt");
  trace.append({0.0, 1.0 / 3.0, PowerDomain::cpu});
  trace.append({0.1, 123.456789012345678, PowerDomain::gpu});
  trace.append({0.2, 24.0, PowerDomain::dram});
  std::stringstream ss;
  write_trace_csv(ss, trace);
  EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), "t_s,domain,watts");
  const auto back = read_trace_csv(ss);
  ASSERT_EQ(back.size(), trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    EXPECT_EQ(back.samples()[i].t, trace.samples()[i].t);
    EXPECT_EQ(back.samples()[i].watts, trace.samples()[i].watts);
    EXPECT_EQ(back.samples()[i].domain, trace.samples()[i].domain);
  }
}

TEST(TraceCsv, RejectsBadHeaderAndRows) {
  std::stringstream bad_header("time,domain,watts\n0,gpu,1\n");
  EXPECT_THROW(read_trace_csv(bad_header), InvalidArgument);
  std::stringstream bad_row("t_s,domain,watts\n0,tpu,1\n");
  EXPECT_THROW(read_trace_csv(bad_row), InvalidArgument);
}
