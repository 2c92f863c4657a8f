#pragma once

#include <cstdint>
#include <string>

#include "frost/hal/power.hpp"

namespace frost::simdev {

/// Simulated accelerator plus host.
///
/// Dynamic power follows P = 1/2 * c_eff * V(f)^2 * f with an affine voltage
/// curve V(f) = v0 + v_slope * f. All constants are calibration values in
/// arbitrary but consistent units; only tdp_w and the idle watts are meant
/// to look like real hardware.
struct DeviceModel {
  std::string name = "device";
  double tdp_w = 320.0;
  double idle_cpu_w = 12.0;
  double idle_gpu_w = 22.0;
  double c_eff = 0.0;
  double v0 = 0.63;
  double v_slope = 0.2456;
  double f_max = 1.71;
  double ops_rate = 1.0e6;  // work units per second at f_max
  double instability_floor = 0.3;
  double noise_sigma = 0.02;
  std::uint64_t seed = 1;
  hal::DimmSpec dimm{4, 16.0, 3600.0};
  bool dram_sensor = false;  // server-grade platforms report DRAM power
  // Short over-limit excursions while the GPU is power-limited.
  double boost_ratio = 1.08;
  double boost_duration_s = 0.3;
  double boost_interval_s = 8.0;

  double voltage(double f) const { return v0 + v_slope * f; }
  double dynamic_power(double f) const;
  // c_eff that puts dynamic power at f_max exactly on tdp_w.
  double calibrated_c_eff() const;

  // Throws InvalidArgument when the model's invariants do not hold.
  void validate() const;
};

/// Synthetic training job.
///
/// Per-sample time at clock f is t0 * (m^p + ((1 - m) * f_max / f)^p)^(1/p)
/// with t0 = compute_intensity / ops_rate and m = membound_fraction. With the
/// default overlap p = 1 the memory and compute parts add; larger p makes
/// them overlap so that time stays flat until the clock falls below the
/// point where compute becomes the bottleneck.
struct WorkloadSpec {
  std::string name = "generic";
  std::uint64_t samples_per_epoch = 50000;
  std::uint64_t batch_size = 128;
  double compute_intensity = 700.0;
  double membound_fraction = 0.5;
  double overlap = 1.0;
  double base_util = 1.0;
  double host_w = 40.0;  // CPU draw above idle while feeding the GPU

  void validate() const;
};

// Largest clock whose dynamic power fits in cap_fraction * tdp_w, capped at
// f_max. Monotone in the cap; tends to zero as the cap does.
double frequency_at(const DeviceModel& model, double cap_fraction);

// Clock the workload actually runs at: a job that does not keep the GPU fully
// busy draws less than the full dynamic power, so a loose cap never binds.
double workload_clock(const DeviceModel& model, const WorkloadSpec& workload, double cap_fraction);

// Time multiplier for caps below the instability floor (1 at or above it).
double instability_penalty(const DeviceModel& model, double cap_fraction);

double seconds_per_sample(const DeviceModel& model, const WorkloadSpec& workload,
                          double cap_fraction);
double throughput_at(const DeviceModel& model, const WorkloadSpec& workload, double cap_fraction);

// Noise-free mean power per domain while the workload runs.
double gpu_power_at(const DeviceModel& model, const WorkloadSpec& workload, double cap_fraction);
double cpu_power_at(const DeviceModel& model, const WorkloadSpec& workload);

// Whether the cap, not the workload, limits the GPU's draw.
bool power_limited(const DeviceModel& model, const WorkloadSpec& workload, double cap_fraction);

// base_util scaled by delivered throughput relative to an unthrottled clock.
double utilization_at(const DeviceModel& model, const WorkloadSpec& workload, double cap_fraction);

}  // namespace frost::simdev
