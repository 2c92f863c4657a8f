#include "frost/energy/accounting.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "frost/energy/trace_ops.hpp"
#include "frost/error.hpp"
#include "frost/hal/sampler.hpp"

namespace frost::energy {
namespace {

EnergyBreakdown finish(std::array<double, 3> raw, double duration) {
  EnergyBreakdown out;
  out.duration_s = duration;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] < 0.0) {
      out.clamped = true;
      raw[i] = 0.0;
    }
    out.joules[i] = raw[i];
  }
  out.total_j = out.joules[0] + out.joules[1] + out.joules[2];
  return out;
}

}  // namespace

IdleBaseline measure_idle(hal::PowerBackend& backend, double t_m, double period_s) {
  if (!std::isfinite(t_m) || t_m <= 0.0) {
    throw InvalidArgument("idle measurement window must be positive");
  }
  auto session = hal::start_sampler(backend, period_s, "idle");
  backend.clock().sleep_for(t_m);
  PowerTrace trace = session.stop();
  IdleBaseline baseline = idle_from_trace(trace);
  baseline.t_m = t_m;
  return baseline;
}

IdleBaseline idle_from_trace(const PowerTrace& trace) {
  IdleBaseline baseline;
  baseline.t_m = trace.span();
  for (PowerDomain d : hal::kAllDomains) {
    const auto series = trace.series(d);
    if (series.empty()) {
      throw BackendUnavailable("no idle readings for domain " + std::string(hal::to_string(d)));
    }
    const double span = series.back().t - series.front().t;
    baseline.mean_watts[hal::index_of(d)] =
        span > 0.0 ? integrate_series(series) / span : series.front().watts;
  }
  return baseline;
}

EnergyBreakdown net_energy(const PowerTrace& trace, const IdleBaseline& baseline) {
  std::array<double, 3> raw{};
  for (PowerDomain d : hal::kAllDomains) {
    const auto series = trace.series(d);
    if (series.size() < 2) {
      throw NotIntegrable("domain " + std::string(hal::to_string(d)) + " is not integrable");
    }
    const double span = series.back().t - series.front().t;
    raw[hal::index_of(d)] = integrate_series(series) - baseline.mean(d) * span;
  }
  return finish(raw, trace.span());
}

EnergyBreakdown net_energy_window(const PowerTrace& trace, const IdleBaseline& baseline,
                                  double t0, double t1) {
  if (!(t1 > t0)) throw InvalidArgument("energy window must have t1 > t0");
  std::array<double, 3> raw{};
  for (PowerDomain d : hal::kAllDomains) {
    const auto series = trace.series(d);
    if (series.size() < 2) {
      throw NotIntegrable("domain " + std::string(hal::to_string(d)) + " is not integrable");
    }
    raw[hal::index_of(d)] = integrate_window(series, t0, t1) - baseline.mean(d) * (t1 - t0);
  }
  return finish(raw, t1 - t0);
}

EnergyBreakdown gross_energy(const PowerTrace& trace) {
  return net_energy(trace, IdleBaseline{});
}

PipelineAccount account_pipeline(std::span<const double> probe_energies_j,
                                 const EnergyBreakdown& main, double idle_correction_j) {
  PipelineAccount account;
  account.probe_energy_j = std::accumulate(probe_energies_j.begin(), probe_energies_j.end(), 0.0);
  account.main_energy_j = main.total_j;
  account.idle_correction_j = idle_correction_j;
  const double net = account.probe_energy_j + account.main_energy_j - idle_correction_j;
  account.clamped = net < 0.0 || main.clamped;
  account.net_j = net < 0.0 ? 0.0 : net;
  return account;
}

}  // namespace frost::energy
