#include "frost/profiler/schedule.hpp"

#include <cmath>

#include "frost/error.hpp"

namespace frost::profiler {

void ProbeSchedule::validate() const {
  if (limits.empty()) throw InvalidArgument("probe schedule has no limits");
  for (std::size_t i = 0; i < limits.size(); ++i) {
    if (!(limits[i] > 0.0 && limits[i] <= 1.0)) {
      throw InvalidArgument("probe limits must lie in (0, 1]");
    }
    if (i > 0 && !(limits[i] > limits[i - 1])) {
      throw InvalidArgument("probe limits must be strictly increasing");
    }
  }
  if (!(warmup_s >= 0.0)) throw InvalidArgument("probe warmup must be >= 0");
  if (!(probe_duration_s > warmup_s)) {
    throw InvalidArgument("probe duration must exceed the warmup");
  }
}

ProbeSchedule default_schedule() {
  ProbeSchedule schedule;
  schedule.limits = limit_ladder(0.3, 1.0, 0.1);
  schedule.probe_duration_s = 30.0;
  schedule.warmup_s = 2.0;
  return schedule;
}

std::vector<double> limit_ladder(double lo, double hi, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("sweep step must be positive");
  if (!(lo < hi)) throw InvalidArgument("sweep range must have lo < hi");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    // Rounded to 1e-9 so 0.3 + 3 * 0.1 lands on 0.6 exactly.
    out.push_back(std::round((lo + static_cast<double>(i) * step) * 1e9) / 1e9);
  }
  return out;
}

ProbePoint make_probe_point(double limit, double energy_j, double duration_s,
                            std::uint64_t samples) {
  if (samples == 0) throw InvalidArgument("probe processed no samples");
  if (!(duration_s > 0.0)) throw InvalidArgument("probe duration must be positive");
  ProbePoint p;
  p.limit_fraction = limit;
  p.energy_j = energy_j;
  p.duration_s = duration_s;
  p.samples_processed = samples;
  p.energy_per_sample_j = energy_j / static_cast<double>(samples);
  p.throughput_sps = static_cast<double>(samples) / duration_s;
  return p;
}

}  // namespace frost::profiler
