#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "frost/hal/backend.hpp"

namespace frost::hal {

// What happened while the profiled job ran: its time span on the backend's
// clock and the completion time of every finished batch.
struct WorkloadRun {
  double t_start = 0.0;
  double t_end = 0.0;
  std::uint64_t batch_size = 1;
  std::uint64_t samples = 0;  // all samples processed, final partial batch included
  std::vector<double> batch_end_times;
  std::optional<double> mean_utilization;  // when the driver can tell

  double duration() const { return t_end - t_start; }
};

// Drives the job being profiled. The power backend keeps sampling while a
// run is in progress.
class WorkloadDriver {
 public:
  virtual ~WorkloadDriver() = default;
  virtual std::string name() const = 0;
  virtual std::uint64_t batch_size() const = 0;
  virtual std::uint64_t samples_per_epoch() const = 0;
  // Runs for a fixed span of backend time.
  virtual WorkloadRun run_for(double seconds) = 0;
  // Runs until n samples are processed; the last batch may be partial.
  virtual WorkloadRun run_samples(std::uint64_t n) = 0;
};

struct Device {
  std::shared_ptr<PowerBackend> backend;
  std::shared_ptr<WorkloadDriver> workload;  // may be null (sensing only)
};

}  // namespace frost::hal
