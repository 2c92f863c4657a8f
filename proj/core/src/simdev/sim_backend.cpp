#include "frost/simdev/sim_backend.hpp"

#include <cmath>

#include "frost/error.hpp"
#include "frost/simdev/catalog.hpp"

namespace frost::simdev {

SimulatedBackend::SimulatedBackend(std::shared_ptr<SimDevice> device,
                                   std::shared_ptr<hal::Clock> clock)
    : device_(std::move(device)), clock_(std::move(clock)) {}

std::optional<double> SimulatedBackend::sensor_watts(hal::PowerDomain domain) {
  if (fail_reads_) throw BackendUnavailable("simulated sensor failure");
  if (domain == hal::PowerDomain::dram && !device_->model().dram_sensor) return std::nullopt;
  return device_->read(domain, clock_->now());
}

void SimulatedBackend::apply_limit(double fraction) {
  ++actuation_calls_;
  if (fail_on_call_ > 0 && --fail_on_call_ == 0) {
    throw ActuationFailed("simulated actuation failure");
  }
  device_->set_cap(fraction);
}

SimWorkload::SimWorkload(std::shared_ptr<SimDevice> device, std::shared_ptr<hal::ManualClock> clock,
                         WorkloadSpec spec)
    : device_(std::move(device)), clock_(std::move(clock)), spec_(std::move(spec)) {
  spec_.validate();
}

hal::WorkloadRun SimWorkload::run_for(double seconds) {
  if (!(seconds > 0.0)) throw InvalidArgument("workload run time must be positive");
  const double rate = throughput_at(device_->model(), spec_, device_->cap());
  hal::WorkloadRun run;
  run.batch_size = spec_.batch_size;
  run.t_start = clock_->now();
  run.t_end = run.t_start + seconds;
  if (rate > 0.0) {
    const double batch_time = static_cast<double>(spec_.batch_size) / rate;
    for (std::uint64_t k = 1;; ++k) {
      const double t = run.t_start + static_cast<double>(k) * batch_time;
      if (t > run.t_end) break;
      run.batch_end_times.push_back(t);
    }
  }
  run.samples = run.batch_end_times.size() * spec_.batch_size;
  run.mean_utilization = utilization_at(device_->model(), spec_, device_->cap());
  device_->begin_work(spec_);
  clock_->advance_to(run.t_end);
  device_->end_work();
  return run;
}

hal::WorkloadRun SimWorkload::run_samples(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("workload sample count must be positive");
  const double rate = throughput_at(device_->model(), spec_, device_->cap());
  if (!(rate > 0.0)) throw BackendUnavailable("simulated workload makes no progress at this cap");
  hal::WorkloadRun run;
  run.batch_size = spec_.batch_size;
  run.samples = n;
  run.t_start = clock_->now();
  const double per_sample = 1.0 / rate;
  const std::uint64_t full = n / spec_.batch_size;
  for (std::uint64_t k = 1; k <= full; ++k) {
    run.batch_end_times.push_back(run.t_start +
                                  static_cast<double>(k * spec_.batch_size) * per_sample);
  }
  run.t_end = run.t_start + static_cast<double>(n) * per_sample;
  if (n % spec_.batch_size != 0) run.batch_end_times.push_back(run.t_end);
  run.mean_utilization = utilization_at(device_->model(), spec_, device_->cap());
  device_->begin_work(spec_);
  clock_->advance_to(run.t_end);
  device_->end_work();
  return run;
}

SimulatedDevice make_simulated_device(const DeviceModel& model, const WorkloadSpec& workload) {
  SimulatedDevice out;
  out.device = std::make_shared<SimDevice>(model);
  out.clock = std::make_shared<hal::ManualClock>();
  out.backend = std::make_shared<SimulatedBackend>(out.device, out.clock);
  out.workload = std::make_shared<SimWorkload>(out.device, out.clock, workload);
  return out;
}

void register_simulated_backend(hal::BackendRegistry& registry) {
  registry.add("simulated", [](const hal::BackendSettings& settings) {
    auto get = [&](const std::string& key) {
      auto it = settings.find(key);
      return it == settings.end() ? std::string{} : it->second;
    };
    const std::string catalog_path = get("catalog");
    const ArchetypeCatalog catalog =
        catalog_path.empty() ? ArchetypeCatalog::bundled() : ArchetypeCatalog::load(catalog_path);
    const std::string name = get("archetype").empty() ? "generic" : get("archetype");
    const std::string device = get("device");
    Archetype arch = catalog.archetype(name, device.empty() ? std::nullopt
                                                            : std::optional<std::string>(device));
    try {
      if (!get("seed").empty()) arch.device.seed = std::stoull(get("seed"));
      if (!get("noise_sigma").empty()) arch.device.noise_sigma = std::stod(get("noise_sigma"));
      if (!get("n_dimm").empty()) arch.device.dimm.n_dimm = std::stoi(get("n_dimm"));
      if (!get("size_gb").empty()) arch.device.dimm.size_gb = std::stod(get("size_gb"));
      if (!get("freq_mhz").empty()) arch.device.dimm.freq_mhz = std::stod(get("freq_mhz"));
      if (!get("samples_per_epoch").empty()) {
        arch.workload.samples_per_epoch = std::stoull(get("samples_per_epoch"));
      }
    } catch (const std::logic_error&) {
      throw ConfigError("simulated backend: numeric setting is malformed");
    }
    arch.device.validate();
    arch.workload.validate();
    return make_simulated_device(arch.device, arch.workload).as_device();
  });
}

}  // namespace frost::simdev
