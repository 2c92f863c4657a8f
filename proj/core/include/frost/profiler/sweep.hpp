#pragma once

#include <vector>

#include "frost/energy/accounting.hpp"
#include "frost/hal/actuator.hpp"
#include "frost/hal/workload.hpp"
#include "frost/profiler/schedule.hpp"

namespace frost::profiler {

// Where a probe's measurement window sits in the sweep trace.
struct ProbeWindow {
  double limit_fraction = 0.0;
  double t_start = 0.0;  // probe start (cap applied)
  double t_measure_begin = 0.0;
  double t_measure_end = 0.0;
  double t_end = 0.0;
};

struct SweepResult {
  std::vector<ProbePoint> points;
  std::vector<ProbeWindow> windows;
  hal::PowerTrace trace;  // the whole sweep, all domains
  double wall_time_s = 0.0;
};

struct SweepOptions {
  double sampler_period_s = 0.1;
};

/// Probes every limit of the schedule in ascending order.
///
/// Each probe applies its cap, runs the workload for probe_duration_s and
/// measures from the first batch completed after the warmup to the last
/// batch completed before the probe ends, net of the idle baseline. The cap
/// active before the sweep is restored on every exit path. ActuationFailed
/// aborts the sweep and discards partial results.
SweepResult run_sweep(hal::CapActuator& actuator, hal::WorkloadDriver& workload,
                      const ProbeSchedule& schedule, const energy::IdleBaseline& baseline,
                      const SweepOptions& options = {});

// Dense sweep over [lo, hi] in `step` increments with the given per-probe
// timing. Throws InvalidArgument for step <= 0 or lo >= hi.
SweepResult fine_sweep(hal::CapActuator& actuator, hal::WorkloadDriver& workload, double lo,
                       double hi, double step, const energy::IdleBaseline& baseline,
                       double probe_duration_s = 30.0, double warmup_s = 2.0,
                       const SweepOptions& options = {});

// Recomputes a probe point from the sweep trace alone.
ProbePoint account_probe(const hal::PowerTrace& trace, const ProbeWindow& window,
                         std::uint64_t samples, const energy::IdleBaseline& baseline);

}  // namespace frost::profiler
