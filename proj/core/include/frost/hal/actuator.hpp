#pragma once

#include <mutex>

#include "frost/hal/backend.hpp"

namespace frost::hal {

inline constexpr double kDefaultMinCapFraction = 0.3;

/// Power-limit control for one device.
///
/// Requests are clamped to [min_fraction, max_fraction] before they reach the
/// backend. The default floor of 0.3 keeps the device out of the region where
/// aggressive capping becomes unstable; it can be lowered explicitly.
class CapActuator {
 public:
  explicit CapActuator(PowerBackend& backend,
                       double min_fraction = kDefaultMinCapFraction,
                       double max_fraction = 1.0);

  // Throws InvalidArgument for fraction <= 0 or non-finite, ActuationFailed
  // when the backend rejects the command. Returns the applied fraction.
  double set_power_limit(double fraction);

  double current_fraction() const;
  double min_fraction() const noexcept { return min_fraction_; }
  double max_fraction() const noexcept { return max_fraction_; }
  PowerBackend& backend() noexcept { return backend_; }

 private:
  PowerBackend& backend_;
  double min_fraction_;
  double max_fraction_;
  mutable std::mutex mutex_;
  double current_;
};

// Restores the cap that was active at construction when it goes out of scope,
// retrying once if the first attempt fails.
class CapRestorer {
 public:
  explicit CapRestorer(CapActuator& actuator)
      : actuator_(actuator), original_(actuator.current_fraction()) {}
  ~CapRestorer();
  CapRestorer(const CapRestorer&) = delete;
  CapRestorer& operator=(const CapRestorer&) = delete;

  double original() const noexcept { return original_; }

 private:
  CapActuator& actuator_;
  double original_;
};

}  // namespace frost::hal
