#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "frost/hal/registry.hpp"

namespace frost::cli {

inline constexpr const char* kConfigEnvVar = "FROST_CONFIG";

/// Run configuration, read from an INI file:
///
///   [backend]   kind = simulated | command, plus backend settings
///               (simulated: archetype, device, seed, noise_sigma, catalog)
///   [command]   read_power_cmd.cpu/.gpu/.dram, set_limit_cmd, tdp_w,
///               workload_cmd, batch_size, samples_per_epoch
///   [dimm]      n_dimm, size_gb, freq_mhz
///   [sampling]  period_s
///   [idle]      window_s
///   [actuator]  min_fraction, max_fraction
///   [run]       main_samples (0 = one epoch), reference (true/false)
struct Config {
  std::string backend_kind = "simulated";
  hal::BackendSettings backend;  // [backend], [command] and [dimm] merged
  double sampling_period_s = 0.1;
  double idle_window_s = 10.0;
  double actuator_min = 0.3;
  double actuator_max = 1.0;
  std::uint64_t main_samples = 0;
  // Repeat the main phase at the policy's limit_hi to measure the tradeoff.
  // Defaults to on for the simulator only.
  std::optional<bool> reference;
  std::string source;  // path it came from, empty for defaults
  std::string text;    // raw document, embedded in reports

  bool run_reference() const { return reference.value_or(backend_kind == "simulated"); }
  void validate() const;  // throws ConfigError
};

// Throws ConfigError.
Config parse_config(const std::string& ini_text);
Config load_config(const std::string& path);

// The explicit path, else $FROST_CONFIG, else nullopt.
std::optional<std::string> resolve_config_path(const std::optional<std::string>& explicit_path);

// Explicit/env path when there is one, else the built-in simulated default.
Config config_or_default(const std::optional<std::string>& explicit_path);

// Factory for the configured backend; the simulated kind is registered on
// first use.
hal::Device make_device(const Config& config);

}  // namespace frost::cli
