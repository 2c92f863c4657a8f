#include "frost/cli/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <future>
#include <sstream>

#include "frost/cli/stats.hpp"
#include "frost/energy/trace_csv.hpp"
#include "frost/energy/trace_ops.hpp"
#include "frost/error.hpp"
#include "frost/hal/sampler.hpp"
#include "frost/simdev/catalog.hpp"
#include "frost/simdev/epoch.hpp"
#include "frost/simdev/sim_backend.hpp"

namespace frost::cli {
namespace {

PhaseRecord run_phase(hal::CapActuator& actuator, hal::WorkloadDriver& workload, double limit,
                      std::uint64_t samples, const energy::IdleBaseline& idle, double period,
                      const std::string& session) {
  PhaseRecord phase;
  phase.limit_fraction = actuator.set_power_limit(limit);
  auto sampler = hal::start_sampler(actuator.backend(), period, session);
  const hal::WorkloadRun run = workload.run_samples(samples);
  phase.trace = sampler.stop();
  phase.t_start = run.t_start;
  phase.t_end = run.t_end;
  phase.samples = run.samples;
  phase.mean_utilization = run.mean_utilization;
  phase.net = energy::net_energy(phase.trace, idle);
  return phase;
}

double gross_window(const hal::PowerTrace& trace, double t0, double t1) {
  double total = 0.0;
  for (hal::PowerDomain d : hal::kAllDomains) {
    total += energy::integrate_window(trace.series(d), t0, t1);
  }
  return total;
}

// Mean total power over each probe window against its throughput.
std::optional<double> power_throughput_r(const RunReport& r) {
  std::vector<double> power, throughput;
  for (std::size_t i = 0; i < r.windows.size(); ++i) {
    const auto& w = r.windows[i];
    power.push_back(gross_window(r.sweep_trace, w.t_measure_begin, w.t_measure_end) /
                    (w.t_measure_end - w.t_measure_begin));
    throughput.push_back(r.probes[i].throughput_sps);
  }
  try {
    return pearson_r(power, throughput);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<double> energy_duration_r(const std::vector<profiler::ProbePoint>& probes) {
  std::vector<double> e, t;
  for (const auto& p : probes) {
    e.push_back(p.energy_per_sample_j);
    t.push_back(p.delay_per_sample_s());
  }
  try {
    return pearson_r(e, t);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

IdleMeasurement measure_idle_traced(hal::PowerBackend& backend, double window_s,
                                    double period_s) {
  if (!(window_s > 0.0)) throw InvalidArgument("idle window must be positive");
  auto sampler = hal::start_sampler(backend, period_s, "idle");
  backend.clock().sleep_for(window_s);
  IdleMeasurement out;
  out.trace = sampler.stop();
  out.baseline = energy::idle_from_trace(out.trace);
  return out;
}

RunReport run_pipeline(const hal::Device& device, const Config& config,
                       const policy::PolicyDoc& policy, const fitcore::FitOptions& fit_options) {
  config.validate();
  policy.validate();
  if (!device.backend) throw BackendUnavailable("no power backend configured");
  if (!device.workload) throw ConfigError("the pipeline needs a workload driver");

  hal::PowerBackend& backend = *device.backend;
  hal::WorkloadDriver& workload = *device.workload;
  hal::CapActuator actuator(backend, config.actuator_min, config.actuator_max);
  hal::CapRestorer restore(actuator);

  RunReport r;
  r.workload = workload.name();
  r.backend = backend.name();
  r.config_text = config.text;
  r.policy = policy;
  const double t0 = backend.clock().now();

  auto idle = measure_idle_traced(backend, config.idle_window_s, config.sampling_period_s);
  r.idle = idle.baseline;
  r.idle_trace = std::move(idle.trace);
  const double t_idle = backend.clock().now();

  profiler::SweepOptions sweep_options;
  sweep_options.sampler_period_s = config.sampling_period_s;
  auto sweep = profiler::run_sweep(actuator, workload, policy.schedule, r.idle, sweep_options);
  r.probes = std::move(sweep.points);
  r.windows = std::move(sweep.windows);
  r.sweep_trace = std::move(sweep.trace);
  const double t_sweep = backend.clock().now();

  r.decision = policy::decide(r.probes, policy, fit_options);

  const std::uint64_t samples =
      config.main_samples > 0 ? config.main_samples : workload.samples_per_epoch();
  r.main = run_phase(actuator, workload, r.decision.chosen_limit, samples, r.idle,
                     config.sampling_period_s, "main");

  if (config.run_reference()) {
    r.reference = run_phase(actuator, workload, policy.limit_hi, samples, r.idle,
                            config.sampling_period_s, "reference");
    const double e_ref = r.reference->net.total_j;
    const double d_ref = r.reference->duration_s();
    Tradeoff t;
    t.reference_limit = r.reference->limit_fraction;
    t.energy_saving_pct = e_ref > 0.0 ? 100.0 * (1.0 - r.main.net.total_j / e_ref) : 0.0;
    t.time_increase_pct = d_ref > 0.0 ? 100.0 * (r.main.duration_s() / d_ref - 1.0) : 0.0;
    r.tradeoff = t;
  }
  const double t_end = backend.clock().now();

  // Probes and main phase both net of idle already.
  std::vector<double> probe_energy;
  for (const auto& p : r.probes) probe_energy.push_back(p.energy_j);
  r.account = energy::account_pipeline(probe_energy, r.main.net);

  for (int m : {0, 1, 2, 3}) {
    policy::PolicyDoc p = policy;
    p.m = m;
    p.max_delay_increase_pct.reset();
    const auto d = policy::decide(r.probes, p, fit_options);
    r.exponents.push_back({m, d.chosen_limit, d.predicted_score, d.method});
  }
  r.analysis.r_energy_duration = energy_duration_r(r.probes);
  r.analysis.r_power_throughput = power_throughput_r(r);

  r.timing.idle_s = t_idle - t0;
  r.timing.sweep_s = t_sweep - t_idle;
  r.timing.main_s = r.main.duration_s();
  r.timing.reference_s = r.reference ? r.reference->duration_s() : 0.0;
  r.timing.total_s = t_end - t0;
  r.generated_at = utc_timestamp();
  return r;
}

RunReport run_pipeline(const Config& config, const policy::PolicyDoc& policy,
                       const fitcore::FitOptions& fit_options) {
  return run_pipeline(make_device(config), config, policy, fit_options);
}

BatchReport run_batch(const Config& config, const policy::PolicyDoc& policy,
                      const std::vector<std::string>& archetypes, bool parallel,
                      const fitcore::FitOptions& fit_options) {
  if (config.backend_kind != "simulated") {
    throw ConfigError("batch runs need the simulated backend");
  }
  if (archetypes.empty()) throw InvalidArgument("batch has no archetypes");

  auto one = [&](const std::string& name) {
    Config c = config;
    c.backend["archetype"] = name;
    if (!c.reference) c.reference = true;
    return run_pipeline(c, policy, fit_options);
  };

  BatchReport batch;
  if (parallel) {
    std::vector<std::future<RunReport>> jobs;
    for (const auto& name : archetypes) jobs.push_back(std::async(std::launch::async, one, name));
    for (auto& j : jobs) batch.runs.push_back(j.get());
  } else {
    for (const auto& name : archetypes) batch.runs.push_back(one(name));
  }

  std::vector<double> e_ref, t_ref;
  for (const auto& r : batch.runs) {
    batch.mean_energy_saving_pct += r.tradeoff->energy_saving_pct;
    batch.mean_time_increase_pct += r.tradeoff->time_increase_pct;
    e_ref.push_back(r.reference->net.total_j);
    t_ref.push_back(r.reference->duration_s());
  }
  batch.mean_energy_saving_pct /= static_cast<double>(batch.runs.size());
  batch.mean_time_increase_pct /= static_cast<double>(batch.runs.size());
  if (batch.runs.size() >= 2) {
    try {
      batch.r_energy_duration = pearson_r(e_ref, t_ref);
    } catch (const Error&) {
    }
  }
  batch.generated_at = utc_timestamp();
  return batch;
}

std::vector<EpochRow> simulate(const SimulateOptions& options) {
  if (options.epochs < 1) throw InvalidArgument("simulate needs at least one epoch");
  if (!(options.cap > 0.0 && options.cap <= 1.0)) {
    throw InvalidArgument("cap must lie in (0, 1]");
  }
  if (options.cap < hal::kDefaultMinCapFraction && !options.allow_unstable) {
    throw InvalidArgument("cap below the stable floor of 0.3; pass --allow-unstable to force it");
  }
  const simdev::ArchetypeCatalog catalog = options.catalog_path.empty()
                                               ? simdev::ArchetypeCatalog::bundled()
                                               : simdev::ArchetypeCatalog::load(options.catalog_path);
  simdev::Archetype arch = catalog.archetype(options.archetype);
  if (options.seed) arch.device.seed = *options.seed;

  if (!options.out_dir.empty()) std::filesystem::create_directories(options.out_dir);

  std::vector<EpochRow> rows;
  for (int i = 0; i < options.epochs; ++i) {
    simdev::DeviceModel model = arch.device;
    model.seed += static_cast<std::uint64_t>(i);

    // Idle baseline on the same seeded device the epoch runs on.
    auto idle_dev = simdev::make_simulated_device(model, arch.workload);
    const auto idle =
        measure_idle_traced(*idle_dev.backend, options.idle_window_s, options.sampler_period_s);

    const auto epoch =
        simdev::run_epoch(model, arch.workload, options.cap, options.sampler_period_s);
    EpochRow row;
    row.epoch = i;
    row.cap = options.cap;
    row.energy_j = energy::gross_energy(epoch.trace).total_j;
    row.net_energy_j = energy::net_energy(epoch.trace, idle.baseline).total_j;
    row.duration_s = epoch.duration_s;
    row.samples = epoch.samples_processed;
    row.mean_util = epoch.mean_util;
    if (!options.out_dir.empty()) {
      row.trace_path =
          (std::filesystem::path(options.out_dir) / ("epoch_" + std::to_string(i) + ".csv"))
              .string();
      energy::save_trace_csv(row.trace_path, epoch.trace);
    }
    rows.push_back(row);
  }
  return rows;
}

std::string epochs_csv(const std::vector<EpochRow>& rows) {
  std::ostringstream out;
  out << "epoch,cap,energy_j,net_energy_j,duration_s,samples,mean_util\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%llu,%.17g\n", r.epoch, r.cap,
                  r.energy_j, r.net_energy_j, r.duration_s,
                  static_cast<unsigned long long>(r.samples), r.mean_util);
    out << buf;
  }
  return out.str();
}

}  // namespace frost::cli
