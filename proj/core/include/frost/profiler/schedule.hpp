#pragma once

#include <cstdint>
#include <vector>

namespace frost::profiler {

struct ProbeSchedule {
  std::vector<double> limits;  // strictly increasing cap fractions in (0, 1]
  double probe_duration_s = 30.0;
  double warmup_s = 2.0;

  // Throws InvalidArgument.
  void validate() const;
};

// Eight caps from 30% to 100% in 10% steps, 30 s each, 2 s discarded.
ProbeSchedule default_schedule();

// lo, lo + step, ... up to hi inclusive (within rounding).
std::vector<double> limit_ladder(double lo, double hi, double step);

/// One probe's outcome, normalized per processed sample.
struct ProbePoint {
  double limit_fraction = 0.0;
  double energy_j = 0.0;    // idle-subtracted
  double duration_s = 0.0;  // measured window, warmup and partial batch excluded
  std::uint64_t samples_processed = 0;
  double energy_per_sample_j = 0.0;
  double throughput_sps = 0.0;

  double delay_per_sample_s() const {
    return throughput_sps > 0.0 ? 1.0 / throughput_sps : 0.0;
  }
};

// Fills the derived fields from the measured ones. Throws InvalidArgument
// when samples or duration are not positive.
ProbePoint make_probe_point(double limit, double energy_j, double duration_s,
                            std::uint64_t samples);

}  // namespace frost::profiler
