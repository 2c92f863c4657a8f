#pragma once

#include <atomic>
#include <memory>

#include "frost/hal/registry.hpp"
#include "frost/hal/workload.hpp"
#include "frost/simdev/device.hpp"

namespace frost::simdev {

// PowerBackend view of a SimDevice, with failure injection for tests.
class SimulatedBackend final : public hal::PowerBackend {
 public:
  SimulatedBackend(std::shared_ptr<SimDevice> device, std::shared_ptr<hal::Clock> clock);

  std::string name() const override { return "simulated"; }
  hal::Clock& clock() override { return *clock_; }
  std::optional<double> sensor_watts(hal::PowerDomain domain) override;
  void apply_limit(double fraction) override;
  double current_limit() const override { return device_->cap(); }
  hal::DimmSpec dimm_spec() const override { return device_->model().dimm; }

  SimDevice& device() noexcept { return *device_; }

  // Every sensor read fails while set.
  void fail_reads(bool fail) { fail_reads_ = fail; }
  // The n-th apply_limit call from now (1 = the next one) fails once.
  void fail_actuation_on_call(int n) { fail_on_call_ = n; }
  int actuation_calls() const { return actuation_calls_; }

 private:
  std::shared_ptr<SimDevice> device_;
  std::shared_ptr<hal::Clock> clock_;
  std::atomic<bool> fail_reads_{false};
  int fail_on_call_ = 0;
  int actuation_calls_ = 0;
};

// Runs a WorkloadSpec on a SimDevice by advancing a ManualClock, which fires
// any sampler ticks along the way.
class SimWorkload final : public hal::WorkloadDriver {
 public:
  SimWorkload(std::shared_ptr<SimDevice> device, std::shared_ptr<hal::ManualClock> clock,
              WorkloadSpec spec);

  std::string name() const override { return spec_.name; }
  std::uint64_t batch_size() const override { return spec_.batch_size; }
  std::uint64_t samples_per_epoch() const override { return spec_.samples_per_epoch; }
  hal::WorkloadRun run_for(double seconds) override;
  hal::WorkloadRun run_samples(std::uint64_t n) override;

  const WorkloadSpec& spec() const noexcept { return spec_; }

 private:
  std::shared_ptr<SimDevice> device_;
  std::shared_ptr<hal::ManualClock> clock_;
  WorkloadSpec spec_;
};

struct SimulatedDevice {
  std::shared_ptr<SimDevice> device;
  std::shared_ptr<hal::ManualClock> clock;
  std::shared_ptr<SimulatedBackend> backend;
  std::shared_ptr<SimWorkload> workload;

  hal::Device as_device() const { return {backend, workload}; }
};

SimulatedDevice make_simulated_device(const DeviceModel& model, const WorkloadSpec& workload);

// Registers kind "simulated". Settings: archetype, device, seed, noise_sigma,
// n_dimm, size_gb, freq_mhz, samples_per_epoch, catalog (path; the bundled
// catalog when empty).
void register_simulated_backend(hal::BackendRegistry& registry);

}  // namespace frost::simdev
