#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>

namespace frost::hal {

// Session time source in seconds. Backends stamp samples with it and the
// sampler schedules its ticks against it.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual double now() const = 0;
  virtual void sleep_for(double seconds) = 0;
};

// Wall-clock time since construction.
class SteadyClock final : public Clock {
 public:
  SteadyClock();
  double now() const override;
  void sleep_for(double seconds) override;

 private:
  std::chrono::steady_clock::time_point origin_;
};

/// Virtual time that only moves when advanced.
///
/// Listeners are called at their deadlines while time is advanced, with now()
/// equal to the deadline; each call returns the listener's next deadline.
/// This is how a sampler ticks against simulated device time.
class ManualClock final : public Clock {
 public:
  using Listener = std::function<double(double now)>;

  double now() const override;
  void sleep_for(double seconds) override { advance_by(seconds); }

  void advance_to(double t);
  void advance_by(double dt);

  std::uint64_t add_listener(double first_deadline, Listener listener);
  void remove_listener(std::uint64_t id);

 private:
  struct Entry {
    double deadline;
    Listener listener;
  };

  mutable std::recursive_mutex mutex_;
  double now_ = 0.0;
  std::uint64_t next_id_ = 1;
  std::map<std::uint64_t, Entry> listeners_;
};

}  // namespace frost::hal
