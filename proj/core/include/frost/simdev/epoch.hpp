#pragma once

#include <cstdint>

#include "frost/hal/power.hpp"
#include "frost/simdev/model.hpp"

namespace frost::simdev {

struct EpochResult {
  hal::PowerTrace trace;
  double duration_s = 0.0;
  std::uint64_t samples_processed = 0;
  double mean_util = 0.0;
};

// One epoch of the workload at a fixed cap on a fresh simulated device.
// Deterministic for a given model seed.
EpochResult run_epoch(const DeviceModel& model, const WorkloadSpec& workload,
                      double cap_fraction, double sampler_period_s = 0.1);

}  // namespace frost::simdev
