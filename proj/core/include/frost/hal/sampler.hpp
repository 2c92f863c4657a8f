#pragma once

#include <memory>
#include <string>

#include "frost/hal/backend.hpp"

namespace frost::hal {

inline constexpr double kDefaultSamplingPeriod = 0.1;

/// A running collection of all three power domains.
///
/// One sample per domain is taken immediately at start and then once per
/// period. On a ManualClock the ticks fire as simulated time advances; on any
/// other clock a background thread ticks in real time. A failed read is
/// recorded as a gap rather than a value.
class SamplingSession {
 public:
  SamplingSession(SamplingSession&&) noexcept;
  SamplingSession& operator=(SamplingSession&&) noexcept;
  ~SamplingSession();

  // Stops collection and hands over the completed trace. Calling stop twice
  // returns an empty trace the second time.
  PowerTrace stop();

  // Copy of what has been collected so far.
  PowerTrace snapshot() const;

  bool running() const;
  double period() const;

 private:
  struct State;
  explicit SamplingSession(std::unique_ptr<State> state);
  friend SamplingSession start_sampler(PowerBackend&, double, std::string);

  std::unique_ptr<State> state_;
};

// Throws InvalidArgument for period_s <= 0 and AlreadyRunning when the
// backend already has a session.
SamplingSession start_sampler(PowerBackend& backend,
                              double period_s = kDefaultSamplingPeriod,
                              std::string session_id = {});

}  // namespace frost::hal
