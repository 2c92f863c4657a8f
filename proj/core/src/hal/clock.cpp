#include "frost/hal/clock.hpp"

#include <cmath>
#include <limits>
#include <thread>

#include "frost/error.hpp"

namespace frost::hal {

SteadyClock::SteadyClock() : origin_(std::chrono::steady_clock::now()) {}

double SteadyClock::now() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - origin_).count();
}

void SteadyClock::sleep_for(double seconds) {
  if (seconds > 0.0) std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
}

double ManualClock::now() const {
  std::lock_guard lock(mutex_);
  return now_;
}

void ManualClock::advance_by(double dt) {
  if (!(dt >= 0.0)) throw InvalidArgument("cannot advance a clock backwards");
  advance_to(now() + dt);
}

void ManualClock::advance_to(double t) {
  std::lock_guard lock(mutex_);
  if (!std::isfinite(t) || t < now_) throw InvalidArgument("cannot advance a clock backwards");
  for (;;) {
    auto due = listeners_.end();
    for (auto it = listeners_.begin(); it != listeners_.end(); ++it) {
      if (it->second.deadline <= t &&
          (due == listeners_.end() || it->second.deadline < due->second.deadline)) {
        due = it;
      }
    }
    if (due == listeners_.end()) break;
    now_ = std::max(now_, due->second.deadline);
    const auto id = due->first;
    const double next = due->second.listener(now_);
    // The listener may have removed itself.
    if (auto it = listeners_.find(id); it != listeners_.end()) {
      if (!(next > now_)) {
        listeners_.erase(it);
      } else {
        it->second.deadline = next;
      }
    }
  }
  now_ = t;
}

std::uint64_t ManualClock::add_listener(double first_deadline, Listener listener) {
  std::lock_guard lock(mutex_);
  const auto id = next_id_++;
  listeners_.emplace(id, Entry{first_deadline, std::move(listener)});
  return id;
}

void ManualClock::remove_listener(std::uint64_t id) {
  std::lock_guard lock(mutex_);
  listeners_.erase(id);
}

}  // namespace frost::hal
