#include "frost/profiler/sweep.hpp"

#include <algorithm>

#include "frost/error.hpp"
#include "frost/hal/sampler.hpp"

namespace frost::profiler {

ProbePoint account_probe(const hal::PowerTrace& trace, const ProbeWindow& window,
                         std::uint64_t samples, const energy::IdleBaseline& baseline) {
  const auto net =
      energy::net_energy_window(trace, baseline, window.t_measure_begin, window.t_measure_end);
  return make_probe_point(window.limit_fraction, net.total_j,
                          window.t_measure_end - window.t_measure_begin, samples);
}

SweepResult run_sweep(hal::CapActuator& actuator, hal::WorkloadDriver& workload,
                      const ProbeSchedule& schedule, const energy::IdleBaseline& baseline,
                      const SweepOptions& options) {
  schedule.validate();
  for (double limit : schedule.limits) {
    if (limit < actuator.min_fraction() || limit > actuator.max_fraction()) {
      throw InvalidArgument("probe limit outside the actuator's bounds");
    }
  }

  hal::CapRestorer restore(actuator);
  hal::PowerBackend& backend = actuator.backend();
  auto session = hal::start_sampler(backend, options.sampler_period_s, "sweep");
  const double t_begin = backend.clock().now();

  struct Pending {
    ProbeWindow window;
    std::uint64_t samples;
  };
  std::vector<Pending> pending;
  pending.reserve(schedule.limits.size());

  for (double limit : schedule.limits) {
    ProbeWindow window;
    window.limit_fraction = actuator.set_power_limit(limit);
    const hal::WorkloadRun run = workload.run_for(schedule.probe_duration_s);
    window.t_start = run.t_start;
    window.t_end = run.t_end;

    // Whole batches inside (warmup end, probe end]. The window starts at the
    // first batch boundary after the warmup so that every counted batch is
    // fully inside it.
    const double warm = run.t_start + schedule.warmup_s;
    auto first = std::find_if(run.batch_end_times.begin(), run.batch_end_times.end(),
                              [warm](double t) { return t >= warm; });
    if (first == run.batch_end_times.end() || std::next(first) == run.batch_end_times.end()) {
      throw InvalidArgument("probe completed fewer than two batches after warmup");
    }
    window.t_measure_begin = *first;
    window.t_measure_end = run.batch_end_times.back();
    const auto batches = static_cast<std::uint64_t>(
        std::distance(first, run.batch_end_times.end()) - 1);
    pending.push_back({window, batches * run.batch_size});
  }

  SweepResult result;
  result.trace = session.stop();
  result.wall_time_s = backend.clock().now() - t_begin;
  for (const auto& p : pending) {
    result.points.push_back(account_probe(result.trace, p.window, p.samples, baseline));
    result.windows.push_back(p.window);
  }
  return result;
}

SweepResult fine_sweep(hal::CapActuator& actuator, hal::WorkloadDriver& workload, double lo,
                       double hi, double step, const energy::IdleBaseline& baseline,
                       double probe_duration_s, double warmup_s, const SweepOptions& options) {
  ProbeSchedule schedule;
  schedule.limits = limit_ladder(lo, hi, step);
  schedule.probe_duration_s = probe_duration_s;
  schedule.warmup_s = warmup_s;
  return run_sweep(actuator, workload, schedule, baseline, options);
}

}  // namespace frost::profiler
