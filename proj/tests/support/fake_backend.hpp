#pragma once

#include <array>
#include <memory>
#include <optional>

#include "frost/error.hpp"
#include "frost/hal/backend.hpp"
#include "frost/hal/clock.hpp"

namespace testing_support {

// Backend with fixed, settable readings on a ManualClock.
class FakeBackend final : public frost::hal::PowerBackend {
 public:
  FakeBackend() : clock_(std::make_shared<frost::hal::ManualClock>()) {}

  std::string name() const override { return "fake"; }
  frost::hal::Clock& clock() override { return *clock_; }
  std::optional<double> sensor_watts(frost::hal::PowerDomain d) override {
    if (failing) throw frost::BackendUnavailable("fake sensor failure");
    return watts[frost::hal::index_of(d)];
  }
  void apply_limit(double fraction) override {
    ++apply_calls;
    if (reject_next) {
      reject_next = false;
      throw frost::ActuationFailed("fake actuation failure");
    }
    limit = fraction;
  }
  double current_limit() const override { return limit; }
  frost::hal::DimmSpec dimm_spec() const override { return dimm; }

  frost::hal::ManualClock& manual() { return *clock_; }

  std::array<std::optional<double>, 3> watts{10.0, 100.0, std::nullopt};
  frost::hal::DimmSpec dimm{4, 16.0, 3600.0};
  double limit = 1.0;
  int apply_calls = 0;
  bool failing = false;
  bool reject_next = false;

 private:
  std::shared_ptr<frost::hal::ManualClock> clock_;
};

}  // namespace testing_support
