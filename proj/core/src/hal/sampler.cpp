#include "frost/hal/sampler.hpp"

#include <chrono>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <thread>

#include "frost/error.hpp"

namespace frost::hal {

struct SamplingSession::State {
  PowerBackend* backend = nullptr;
  double period = kDefaultSamplingPeriod;
  mutable std::mutex mutex;
  PowerTrace trace;
  bool running = false;

  ManualClock* manual = nullptr;
  std::uint64_t listener_id = 0;

  std::condition_variable cv;
  bool stop_requested = false;
  std::thread worker;

  void tick() {
    for (PowerDomain domain : kAllDomains) {
      try {
        PowerSample sample = read_power(*backend, domain);
        std::lock_guard lock(mutex);
        trace.append(sample);
      } catch (const BackendUnavailable&) {
        std::lock_guard lock(mutex);
        trace.mark_gap({backend->clock().now(), domain});
      }
    }
  }

  void run_thread(double t0) {
    Clock& clock = backend->clock();
    double next = t0 + period;
    std::unique_lock lock(mutex);
    while (!stop_requested) {
      const double wait = next - clock.now();
      if (wait > 0.0) {
        cv.wait_for(lock, std::chrono::duration<double>(wait));
        continue;
      }
      lock.unlock();
      tick();
      lock.lock();
      next += period;
      // Fell behind by more than a period: resume from now instead of
      // firing a burst of catch-up reads.
      if (next < clock.now()) next = clock.now() + period;
    }
  }

  void halt() {
    if (!running) return;
    if (manual != nullptr) {
      manual->remove_listener(listener_id);
    } else {
      {
        std::lock_guard lock(mutex);
        stop_requested = true;
      }
      cv.notify_all();
      if (worker.joinable()) worker.join();
    }
    running = false;
    backend->end_sampling();
  }
};

SamplingSession::SamplingSession(std::unique_ptr<State> state) : state_(std::move(state)) {}
SamplingSession::SamplingSession(SamplingSession&&) noexcept = default;

SamplingSession& SamplingSession::operator=(SamplingSession&& other) noexcept {
  if (this != &other) {
    if (state_) state_->halt();
    state_ = std::move(other.state_);
  }
  return *this;
}

SamplingSession::~SamplingSession() {
  if (state_) state_->halt();
}

PowerTrace SamplingSession::stop() {
  if (!state_) return {};
  state_->halt();
  std::lock_guard lock(state_->mutex);
  PowerTrace out = std::move(state_->trace);
  state_->trace = PowerTrace(out.session_id());
  return out;
}

PowerTrace SamplingSession::snapshot() const {
  if (!state_) return {};
  std::lock_guard lock(state_->mutex);
  return state_->trace;
}

bool SamplingSession::running() const { return state_ && state_->running; }

double SamplingSession::period() const { return state_ ? state_->period : 0.0; }

SamplingSession start_sampler(PowerBackend& backend, double period_s, std::string session_id) {
  if (!std::isfinite(period_s) || period_s <= 0.0) {
    throw InvalidArgument("sampling period must be positive");
  }
  if (!backend.try_begin_sampling()) {
    throw AlreadyRunning("a sampling session is already active on " + backend.name());
  }
  auto state = std::make_unique<SamplingSession::State>();
  state->backend = &backend;
  state->period = period_s;
  state->trace = PowerTrace(std::move(session_id));
  state->running = true;

  try {
    const double t0 = backend.clock().now();
    state->tick();
    if (auto* manual = dynamic_cast<ManualClock*>(&backend.clock())) {
      state->manual = manual;
      auto* raw = state.get();
      // Deadlines are computed from the tick index so they do not drift.
      auto index = std::make_shared<std::uint64_t>(1);
      state->listener_id = manual->add_listener(
          t0 + period_s, [raw, t0, period_s, index](double) {
            raw->tick();
            ++*index;
            return t0 + static_cast<double>(*index) * period_s;
          });
    } else {
      auto* raw = state.get();
      state->worker = std::thread([raw, t0] { raw->run_thread(t0); });
    }
  } catch (...) {
    backend.end_sampling();
    throw;
  }
  return SamplingSession(std::move(state));
}

}  // namespace frost::hal
