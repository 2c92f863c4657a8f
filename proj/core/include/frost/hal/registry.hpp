#pragma once

#include <functional>
#include <map>
#include <shared_mutex>
#include <string>
#include <vector>

#include "frost/hal/workload.hpp"

namespace frost::hal {

using BackendSettings = std::map<std::string, std::string>;

// Named backend factories. Reads are concurrent; registration is rare.
class BackendRegistry {
 public:
  using Factory = std::function<Device(const BackendSettings&)>;

  void add(const std::string& kind, Factory factory);
  bool contains(const std::string& kind) const;
  std::vector<std::string> kinds() const;
  // Throws ConfigError for an unregistered kind.
  Device create(const std::string& kind, const BackendSettings& settings) const;

  // Process-wide registry with the "command" backend preinstalled.
  static BackendRegistry& global();

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, Factory> factories_;
};

// Builds a command backend (and, when "workload_cmd" is set, its workload)
// from settings keys read_power_cmd.cpu/.gpu/.dram, set_limit_cmd,
// n_dimm, size_gb, freq_mhz, tdp_w, workload_cmd, batch_size,
// samples_per_epoch.
Device make_command_device(const BackendSettings& settings);

}  // namespace frost::hal
