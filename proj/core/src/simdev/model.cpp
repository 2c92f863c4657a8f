#include "frost/simdev/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "frost/error.hpp"

namespace frost::simdev {

double DeviceModel::dynamic_power(double f) const {
  const double v = voltage(f);
  return 0.5 * c_eff * v * v * f;
}

double DeviceModel::calibrated_c_eff() const {
  const double v = voltage(f_max);
  return 2.0 * tdp_w / (v * v * f_max);
}

void DeviceModel::validate() const {
  if (!(tdp_w > 0.0)) throw InvalidArgument("device tdp_w must be positive");
  if (idle_cpu_w < 0.0 || idle_gpu_w < 0.0) throw InvalidArgument("idle watts must be >= 0");
  if (!(tdp_w > idle_gpu_w + idle_cpu_w)) {
    throw InvalidArgument("device tdp_w must exceed total idle power");
  }
  if (!(f_max > 0.0) || !(ops_rate > 0.0)) throw InvalidArgument("f_max and ops_rate must be > 0");
  if (v0 < 0.0 || v_slope < 0.0 || !(voltage(f_max) > 0.0)) {
    throw InvalidArgument("voltage curve must be non-negative and non-decreasing");
  }
  if (!(instability_floor > 0.0 && instability_floor < 1.0)) {
    throw InvalidArgument("instability_floor must lie in (0, 1)");
  }
  if (noise_sigma < 0.0) throw InvalidArgument("noise_sigma must be >= 0");
  if (!(c_eff > 0.0)) throw InvalidArgument("c_eff must be positive");
  if (std::abs(dynamic_power(f_max) / tdp_w - 1.0) > 0.02) {
    throw InvalidArgument("dynamic power at f_max must be within 2% of tdp_w");
  }
  if (boost_ratio < 1.0 || boost_ratio > 1.1) throw InvalidArgument("boost_ratio must be in [1, 1.1]");
  if (boost_duration_s < 0.0 || boost_duration_s > 0.5) {
    throw InvalidArgument("boost_duration_s must be in [0, 0.5]");
  }
  if (!(boost_interval_s > boost_duration_s)) {
    throw InvalidArgument("boost_interval_s must exceed boost_duration_s");
  }
  dimm.validate();
}

void WorkloadSpec::validate() const {
  if (samples_per_epoch == 0) throw InvalidArgument("samples_per_epoch must be > 0");
  if (batch_size == 0) throw InvalidArgument("batch_size must be > 0");
  if (!(compute_intensity > 0.0)) throw InvalidArgument("compute_intensity must be > 0");
  if (!(membound_fraction >= 0.0 && membound_fraction <= 1.0)) {
    throw InvalidArgument("membound_fraction must lie in [0, 1]");
  }
  if (!(overlap >= 1.0)) throw InvalidArgument("overlap exponent must be >= 1");
  if (!(base_util > 0.0 && base_util <= 1.0)) throw InvalidArgument("base_util must lie in (0, 1]");
  if (host_w < 0.0) throw InvalidArgument("host_w must be >= 0");
}

double frequency_at(const DeviceModel& model, double cap_fraction) {
  if (!(cap_fraction > 0.0)) return 0.0;
  const double budget = cap_fraction * model.tdp_w;
  if (model.dynamic_power(model.f_max) <= budget) return model.f_max;

  // Safeguarded Newton on the monotone cubic P(f) - budget over [0, f_max].
  double lo = 0.0;
  double hi = model.f_max;
  double f = model.f_max * std::cbrt(cap_fraction);
  for (int i = 0; i < 100; ++i) {
    const double g = model.dynamic_power(f) - budget;
    if (g > 0.0) {
      hi = f;
    } else {
      lo = f;
    }
    const double v = model.voltage(f);
    const double slope = 0.5 * model.c_eff * (v * v + 2.0 * v * model.v_slope * f);
    double next = slope > 0.0 ? f - g / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - f) <= 1e-15 * model.f_max) {
      f = next;
      break;
    }
    f = next;
  }
  // Largest f with P(f) <= budget: step down if rounding left us just above.
  // Newton on a convex curve approaches from above, so lo may still be 0.
  for (int i = 0; i < 64 && model.dynamic_power(f) > budget; ++i) f = std::nextafter(f, 0.0);
  if (model.dynamic_power(f) > budget) f = lo;
  return f;
}

double workload_clock(const DeviceModel& model, const WorkloadSpec& workload, double cap_fraction) {
  if (!(cap_fraction > 0.0)) return 0.0;
  const double idle = model.idle_gpu_w;
  const double allowed = idle + (cap_fraction * model.tdp_w - idle) / workload.base_util;
  const double device_fraction = std::min(1.0, allowed / model.tdp_w);
  return frequency_at(model, device_fraction);
}

double instability_penalty(const DeviceModel& model, double cap_fraction) {
  if (cap_fraction >= model.instability_floor) return 1.0;
  const double depth = (model.instability_floor - cap_fraction) / model.instability_floor;
  return 1.5 + 4.0 * depth;
}

double seconds_per_sample(const DeviceModel& model, const WorkloadSpec& workload,
                          double cap_fraction) {
  const double f = workload_clock(model, workload, cap_fraction);
  if (!(f > 0.0)) return std::numeric_limits<double>::infinity();
  const double t0 = workload.compute_intensity / model.ops_rate;
  const double mem = workload.membound_fraction;
  const double compute = (1.0 - workload.membound_fraction) * model.f_max / f;
  double combined = 0.0;
  if (workload.overlap == 1.0) {
    combined = mem + compute;
  } else {
    // p-norm, scaled by the larger term so large exponents do not overflow.
    const double big = std::max(mem, compute);
    const double small = std::min(mem, compute);
    combined = big > 0.0 ? big * std::pow(1.0 + std::pow(small / big, workload.overlap),
                                          1.0 / workload.overlap)
                         : 0.0;
  }
  return t0 * combined * instability_penalty(model, cap_fraction);
}

double throughput_at(const DeviceModel& model, const WorkloadSpec& workload, double cap_fraction) {
  const double spp = seconds_per_sample(model, workload, cap_fraction);
  return std::isfinite(spp) && spp > 0.0 ? 1.0 / spp : 0.0;
}

double gpu_power_at(const DeviceModel& model, const WorkloadSpec& workload, double cap_fraction) {
  // Below the floor the voltage guard band keeps the draw at the floor level.
  const double cap = std::max(cap_fraction, model.instability_floor);
  const double f = workload_clock(model, workload, cap);
  const double idle = model.idle_gpu_w;
  return std::max(idle, idle + workload.base_util * (model.dynamic_power(f) - idle));
}

double cpu_power_at(const DeviceModel& model, const WorkloadSpec& workload) {
  return model.idle_cpu_w + workload.host_w;
}

bool power_limited(const DeviceModel& model, const WorkloadSpec& workload, double cap_fraction) {
  return workload_clock(model, workload, cap_fraction) < model.f_max;
}

double utilization_at(const DeviceModel& model, const WorkloadSpec& workload, double cap_fraction) {
  // A cap far above TDP never binds.
  const double peak = throughput_at(model, workload, 1.0e9);
  const double rate = throughput_at(model, workload, cap_fraction);
  return peak > 0.0 ? workload.base_util * rate / peak : 0.0;
}

}  // namespace frost::simdev
