#include "frost/hal/backend.hpp"

#include <cmath>
#include <string>

#include "frost/error.hpp"

namespace frost::hal {

PowerSample read_power(PowerBackend& backend, PowerDomain domain) {
  const double t = backend.clock().now();
  std::optional<double> watts = backend.sensor_watts(domain);
  if (!watts) {
    if (domain != PowerDomain::dram) {
      throw BackendUnavailable(backend.name() + ": no sensor for domain " +
                               std::string(to_string(domain)));
    }
    watts = estimate_dram_power(backend.dimm_spec());
  }
  if (!std::isfinite(*watts) || *watts < 0.0) {
    throw BackendUnavailable(backend.name() + ": invalid reading for domain " +
                             std::string(to_string(domain)));
  }
  return PowerSample{t, *watts, domain};
}

}  // namespace frost::hal
