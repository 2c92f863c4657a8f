#pragma once

#include <atomic>
#include <optional>
#include <string>

#include "frost/hal/clock.hpp"
#include "frost/hal/power.hpp"

namespace frost::hal {

// A device's power sensors and its power-limit control.
class PowerBackend {
 public:
  virtual ~PowerBackend() = default;

  virtual std::string name() const = 0;
  virtual Clock& clock() = 0;

  // Raw reading for one domain. Returns nullopt when the platform has no
  // sensor for it; throws BackendUnavailable when the sensor read fails.
  virtual std::optional<double> sensor_watts(PowerDomain domain) = 0;

  // Applies a cap given as a fraction of TDP. Throws ActuationFailed.
  virtual void apply_limit(double fraction) = 0;
  virtual double current_limit() const = 0;

  // Installed memory, used for the DRAM estimate when there is no sensor.
  virtual DimmSpec dimm_spec() const = 0;

  // Sampler bookkeeping: at most one sampling session per backend.
  bool try_begin_sampling() noexcept { return !sampling_.exchange(true); }
  void end_sampling() noexcept { sampling_.store(false); }
  bool sampling() const noexcept { return sampling_.load(); }

 private:
  std::atomic<bool> sampling_{false};
};

// Current power of one domain, stamped with the backend's session clock.
// A DRAM domain without a sensor falls back to estimate_dram_power().
// Never returns negative watts; a failed or nonsensical read throws
// BackendUnavailable.
PowerSample read_power(PowerBackend& backend, PowerDomain domain);

}  // namespace frost::hal
