#include "frost/hal/actuator.hpp"

#include <algorithm>
#include <cmath>

#include "frost/error.hpp"

namespace frost::hal {

CapActuator::CapActuator(PowerBackend& backend, double min_fraction, double max_fraction)
    : backend_(backend), min_fraction_(min_fraction), max_fraction_(max_fraction) {
  if (!(min_fraction > 0.0) || !(max_fraction <= 1.0) || !(min_fraction <= max_fraction)) {
    throw InvalidArgument("actuator bounds must satisfy 0 < min <= max <= 1");
  }
  current_ = std::clamp(backend_.current_limit(), min_fraction_, max_fraction_);
}

double CapActuator::set_power_limit(double fraction) {
  if (!std::isfinite(fraction) || fraction <= 0.0) {
    throw InvalidArgument("power limit fraction must be positive");
  }
  const double applied = std::clamp(fraction, min_fraction_, max_fraction_);
  std::lock_guard lock(mutex_);
  if (applied != current_ || backend_.current_limit() != applied) {
    backend_.apply_limit(applied);
    current_ = applied;
  }
  return applied;
}

double CapActuator::current_fraction() const {
  std::lock_guard lock(mutex_);
  return current_;
}

CapRestorer::~CapRestorer() {
  // One retry: a device left capped is worse than a slow exit. After that
  // there is nothing sensible left to do while unwinding.
  for (int attempt = 0; attempt < 2; ++attempt) {
    try {
      actuator_.set_power_limit(original_);
      return;
    } catch (...) {
    }
  }
}

}  // namespace frost::hal
