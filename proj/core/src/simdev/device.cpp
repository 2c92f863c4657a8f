#include "frost/simdev/device.hpp"

#include <algorithm>
#include <cmath>

#include "frost/error.hpp"

namespace frost::simdev {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_hash(std::uint64_t seed, std::int64_t slot) {
  const auto h = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(slot)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace

SimDevice::SimDevice(DeviceModel model) : model_(std::move(model)), rng_(model_.seed) {
  model_.validate();
}

void SimDevice::set_cap(double fraction) {
  if (!std::isfinite(fraction) || fraction <= 0.0 || fraction > 1.0) {
    throw InvalidArgument("simulated cap must lie in (0, 1]");
  }
  std::lock_guard lock(mutex_);
  cap_ = fraction;
}

double SimDevice::cap() const {
  std::lock_guard lock(mutex_);
  return cap_;
}

void SimDevice::begin_work(const WorkloadSpec& workload) {
  workload.validate();
  std::lock_guard lock(mutex_);
  work_ = workload;
}

void SimDevice::end_work() {
  std::lock_guard lock(mutex_);
  work_.reset();
}

std::optional<WorkloadSpec> SimDevice::active_workload() const {
  std::lock_guard lock(mutex_);
  return work_;
}

double SimDevice::mean_power(hal::PowerDomain domain) const {
  std::lock_guard lock(mutex_);
  return mean_power_locked(domain);
}

double SimDevice::mean_power_locked(hal::PowerDomain domain) const {
  switch (domain) {
    case hal::PowerDomain::cpu:
      return work_ ? cpu_power_at(model_, *work_) : model_.idle_cpu_w;
    case hal::PowerDomain::gpu:
      return work_ ? gpu_power_at(model_, *work_, cap_) : model_.idle_gpu_w;
    case hal::PowerDomain::dram:
      return hal::estimate_dram_power(model_.dimm);
  }
  return 0.0;
}

bool SimDevice::limited_locked() const {
  return work_ && cap_ >= model_.instability_floor && power_limited(model_, *work_, cap_);
}

bool SimDevice::boosting(double t) const {
  std::lock_guard lock(mutex_);
  if (!limited_locked() || model_.boost_duration_s <= 0.0) return false;
  const double interval = model_.boost_interval_s;
  const auto slot = static_cast<std::int64_t>(std::floor(t / interval));
  const double start = static_cast<double>(slot) * interval +
                       unit_hash(model_.seed, slot) * (interval - model_.boost_duration_s);
  return t >= start && t < start + model_.boost_duration_s;
}

double SimDevice::read(hal::PowerDomain domain, double t) {
  const bool boost = domain == hal::PowerDomain::gpu && boosting(t);
  std::lock_guard lock(mutex_);
  double watts = mean_power_locked(domain);
  if (boost) watts *= model_.boost_ratio;

  double sigma = model_.noise_sigma;
  const bool unstable = work_ && cap_ < model_.instability_floor;
  if (domain == hal::PowerDomain::gpu && unstable) sigma *= 3.0;
  if (sigma > 0.0) {
    const double z = std::clamp(noise_(rng_), -4.0, 4.0);
    watts *= 1.0 + sigma * z;
  }
  if (domain == hal::PowerDomain::gpu && limited_locked()) {
    watts = std::min(watts, 1.1 * cap_ * model_.tdp_w);
  }
  return std::max(0.0, watts);
}

}  // namespace frost::simdev
