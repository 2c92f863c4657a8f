#pragma once

#include <array>
#include <span>

#include "frost/hal/backend.hpp"
#include "frost/hal/power.hpp"

namespace frost::energy {

using hal::PowerDomain;
using hal::PowerTrace;

// Per-domain mean power with no workload running, over a window of t_m s.
struct IdleBaseline {
  std::array<double, 3> mean_watts{};
  double t_m = 0.0;

  double mean(PowerDomain d) const { return mean_watts[hal::index_of(d)]; }
  double total() const { return mean_watts[0] + mean_watts[1] + mean_watts[2]; }
};

struct EnergyBreakdown {
  std::array<double, 3> joules{};
  double total_j = 0.0;
  double duration_s = 0.0;
  // Set when a domain's idle-subtracted energy went negative and was floored.
  bool clamped = false;

  double domain(PowerDomain d) const { return joules[hal::index_of(d)]; }
};

// Whole-pipeline energy: probe runs plus the main phase, less idle.
struct PipelineAccount {
  double probe_energy_j = 0.0;
  double main_energy_j = 0.0;
  double idle_correction_j = 0.0;
  double net_j = 0.0;
  bool clamped = false;
};

// Samples the backend for t_m seconds of its clock and averages each domain.
// Caller guarantees the device is idle. Throws InvalidArgument for t_m <= 0,
// BackendUnavailable if any domain yields no readings.
IdleBaseline measure_idle(hal::PowerBackend& backend, double t_m,
                          double period_s = 0.1);

// Time-weighted per-domain mean of an idle trace.
IdleBaseline idle_from_trace(const PowerTrace& trace);

// Per-domain integral minus mean idle power times that domain's active span,
// each floored at zero.
EnergyBreakdown net_energy(const PowerTrace& trace, const IdleBaseline& baseline);

// Same, restricted to [t0, t1].
EnergyBreakdown net_energy_window(const PowerTrace& trace, const IdleBaseline& baseline,
                                  double t0, double t1);

// Energy with nothing subtracted.
EnergyBreakdown gross_energy(const PowerTrace& trace);

// probe_energy + main - idle_correction, floored at zero. Inputs that were
// already idle-netted are passed with idle_correction_j = 0.
PipelineAccount account_pipeline(std::span<const double> probe_energies_j,
                                 const EnergyBreakdown& main, double idle_correction_j = 0.0);

}  // namespace frost::energy
