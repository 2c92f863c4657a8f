#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "frost/hal/backend.hpp"
#include "frost/hal/workload.hpp"

namespace frost::hal {

// Shell-template backend. Each domain's read command prints a wattage as the
// first number on its first line; the limit command receives the cap via
// the {limit_pct}, {limit_fraction} and (when tdp_w is set) {limit_w}
// placeholders. A domain without a command has no sensor.
struct CommandBackendConfig {
  std::map<PowerDomain, std::string> read_power_cmd;
  std::string set_limit_cmd;
  DimmSpec dimm;
  double tdp_w = 0.0;
  double initial_limit = 1.0;
};

class CommandBackend final : public PowerBackend {
 public:
  explicit CommandBackend(CommandBackendConfig config,
                          std::shared_ptr<Clock> clock = std::make_shared<SteadyClock>());

  std::string name() const override { return "command"; }
  Clock& clock() override { return *clock_; }
  std::optional<double> sensor_watts(PowerDomain domain) override;
  void apply_limit(double fraction) override;
  double current_limit() const override;
  DimmSpec dimm_spec() const override { return config_.dimm; }

  std::shared_ptr<Clock> clock_ptr() const { return clock_; }

 private:
  CommandBackendConfig config_;
  std::shared_ptr<Clock> clock_;
  mutable std::mutex mutex_;
  double limit_;
};

// Runs an external job. The template gets {duration_s} for timed runs and
// {samples} for counted runs; the job prints the number of samples it
// processed as the last number of its output. Batch completions are spread
// evenly over the run since the job does not report them individually.
class CommandWorkload final : public WorkloadDriver {
 public:
  CommandWorkload(std::string command_template, std::shared_ptr<Clock> clock,
                  std::uint64_t batch_size, std::uint64_t samples_per_epoch);

  std::string name() const override { return "command"; }
  std::uint64_t batch_size() const override { return batch_size_; }
  std::uint64_t samples_per_epoch() const override { return samples_per_epoch_; }
  WorkloadRun run_for(double seconds) override;
  WorkloadRun run_samples(std::uint64_t n) override;

 private:
  WorkloadRun run(const std::map<std::string, std::string>& values);

  std::string template_;
  std::shared_ptr<Clock> clock_;
  std::uint64_t batch_size_;
  std::uint64_t samples_per_epoch_;
};

std::string format_limit_pct(double fraction);

}  // namespace frost::hal
