#include "frost/hal/command_backend.hpp"

#include <cmath>
#include <cstdio>

#include "frost/error.hpp"
#include "frost/hal/shell.hpp"

namespace frost::hal {
namespace {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  std::string s(buf);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

std::string format_limit_pct(double fraction) { return format_number(fraction * 100.0); }

CommandBackend::CommandBackend(CommandBackendConfig config, std::shared_ptr<Clock> clock)
    : config_(std::move(config)), clock_(std::move(clock)), limit_(config_.initial_limit) {
  config_.dimm.validate();
}

std::optional<double> CommandBackend::sensor_watts(PowerDomain domain) {
  auto it = config_.read_power_cmd.find(domain);
  if (it == config_.read_power_cmd.end() || it->second.empty()) return std::nullopt;
  const ShellResult result = run_shell(it->second);
  if (result.exit_code != 0) {
    throw BackendUnavailable("read command for " + std::string(to_string(domain)) +
                             " exited with status " + std::to_string(result.exit_code));
  }
  const auto watts = first_number_on_first_line(result.output);
  if (!watts || !std::isfinite(*watts) || *watts < 0.0) {
    throw BackendUnavailable("read command for " + std::string(to_string(domain)) +
                             " did not print a wattage");
  }
  return watts;
}

void CommandBackend::apply_limit(double fraction) {
  std::lock_guard lock(mutex_);
  if (!config_.set_limit_cmd.empty()) {
    std::map<std::string, std::string> values{
        {"limit_pct", format_limit_pct(fraction)},
        {"limit_fraction", format_number(fraction)},
    };
    if (config_.tdp_w > 0.0) values["limit_w"] = format_number(fraction * config_.tdp_w);
    const ShellResult result = run_shell(expand_template(config_.set_limit_cmd, values));
    if (result.exit_code != 0) {
      throw ActuationFailed("set-limit command exited with status " +
                            std::to_string(result.exit_code));
    }
  }
  limit_ = fraction;
}

double CommandBackend::current_limit() const {
  std::lock_guard lock(mutex_);
  return limit_;
}

CommandWorkload::CommandWorkload(std::string command_template, std::shared_ptr<Clock> clock,
                                 std::uint64_t batch_size, std::uint64_t samples_per_epoch)
    : template_(std::move(command_template)),
      clock_(std::move(clock)),
      batch_size_(batch_size == 0 ? 1 : batch_size),
      samples_per_epoch_(samples_per_epoch) {
  if (template_.empty()) throw ConfigError("workload command template is empty");
}

WorkloadRun CommandWorkload::run(const std::map<std::string, std::string>& values) {
  WorkloadRun out;
  out.batch_size = batch_size_;
  out.t_start = clock_->now();
  const ShellResult result = run_shell(expand_template(template_, values));
  out.t_end = clock_->now();
  if (result.exit_code != 0) {
    throw BackendUnavailable("workload command exited with status " +
                             std::to_string(result.exit_code));
  }
  const auto processed = last_number(result.output);
  if (!processed || *processed < 0.0) {
    throw BackendUnavailable("workload command did not report a sample count");
  }
  out.samples = static_cast<std::uint64_t>(*processed);
  const auto batches = out.samples / batch_size_;
  const double span = out.t_end - out.t_start;
  for (std::uint64_t i = 1; i <= batches; ++i) {
    out.batch_end_times.push_back(out.t_start +
                                  span * static_cast<double>(i) / static_cast<double>(batches));
  }
  return out;
}

WorkloadRun CommandWorkload::run_for(double seconds) {
  return run({{"duration_s", format_number(seconds)}});
}

WorkloadRun CommandWorkload::run_samples(std::uint64_t n) {
  return run({{"samples", std::to_string(n)}});
}

}  // namespace frost::hal
