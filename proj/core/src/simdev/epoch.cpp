#include "frost/simdev/epoch.hpp"

#include <cmath>

#include "frost/error.hpp"
#include "frost/hal/sampler.hpp"
#include "frost/simdev/sim_backend.hpp"

namespace frost::simdev {

EpochResult run_epoch(const DeviceModel& model, const WorkloadSpec& workload,
                      double cap_fraction, double sampler_period_s) {
  if (!std::isfinite(cap_fraction) || cap_fraction <= 0.0 || cap_fraction > 1.0) {
    throw InvalidArgument("epoch cap must lie in (0, 1]");
  }
  SimulatedDevice sim = make_simulated_device(model, workload);
  sim.device->set_cap(cap_fraction);

  auto session = hal::start_sampler(*sim.backend, sampler_period_s, "epoch");
  const hal::WorkloadRun run = sim.workload->run_samples(workload.samples_per_epoch);
  EpochResult result;
  result.trace = session.stop();
  result.duration_s = run.duration();
  result.samples_processed = run.samples;
  result.mean_util = utilization_at(model, workload, cap_fraction);
  return result;
}

}  // namespace frost::simdev
