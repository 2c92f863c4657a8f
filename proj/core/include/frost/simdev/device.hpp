#pragma once

#include <mutex>
#include <optional>
#include <random>

#include "frost/simdev/model.hpp"

namespace frost::simdev {

// Stateful simulated device: current cap, what is running, and seeded
// sensor noise. Readings are a function of the state and the time asked
// for, plus one noise draw per reading.
class SimDevice {
 public:
  explicit SimDevice(DeviceModel model);

  const DeviceModel& model() const noexcept { return model_; }

  void set_cap(double fraction);
  double cap() const;

  void begin_work(const WorkloadSpec& workload);
  void end_work();
  std::optional<WorkloadSpec> active_workload() const;

  // Noise-free mean draw in the current state. DRAM is the DIMM estimate.
  double mean_power(hal::PowerDomain domain) const;

  // One sensor reading at time t.
  double read(hal::PowerDomain domain, double t);

  // Whether a boost excursion is in progress at t. Bursts only happen while
  // the GPU is power-limited.
  bool boosting(double t) const;

 private:
  double mean_power_locked(hal::PowerDomain domain) const;
  bool limited_locked() const;

  DeviceModel model_;
  mutable std::mutex mutex_;
  double cap_ = 1.0;
  std::optional<WorkloadSpec> work_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> noise_{0.0, 1.0};
};

}  // namespace frost::simdev
