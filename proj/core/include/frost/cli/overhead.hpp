#pragma once

#include <string>
#include <vector>

#include "frost/hal/backend.hpp"

namespace frost::cli {

struct OverheadOptions {
  double period_s = 0.1;
  int reps = 10;
  double work_s = 0.25;    // target wall time of one unsampled run
  bool sampler_on = true;  // false compares sampler-off against itself
  std::string archetype = "generic";
};

struct OverheadReport {
  double period_s = 0.0;
  int reps = 0;
  bool sampler_on = true;
  std::vector<double> baseline_s;
  std::vector<double> measured_s;
  double baseline_median_s = 0.0;
  double measured_median_s = 0.0;
  double overhead_pct = 0.0;
  std::size_t samples_collected = 0;
};

/// Wall-clock cost of sampling during a CPU-bound job.
///
/// The job is a fixed amount of arithmetic sized to about work_s. Each
/// repetition times it once without and once with a real-time sampler
/// (alternating which goes first). The overhead is the median of the
/// per-repetition time ratios. Sensors
/// come from `backend` when given, else from a simulated device running the
/// archetype on the steady clock.
OverheadReport measure_overhead(const OverheadOptions& options,
                                hal::PowerBackend* backend = nullptr);

std::string to_json(const OverheadReport& report, int indent = 2);

}  // namespace frost::cli
