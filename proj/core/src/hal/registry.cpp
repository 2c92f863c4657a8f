#include "frost/hal/registry.hpp"

#include <mutex>

#include "frost/error.hpp"
#include "frost/hal/command_backend.hpp"

namespace frost::hal {
namespace {

std::string lookup(const BackendSettings& s, const std::string& key, std::string fallback = {}) {
  auto it = s.find(key);
  return it == s.end() ? fallback : it->second;
}

double lookup_number(const BackendSettings& s, const std::string& key, double fallback) {
  auto it = s.find(key);
  if (it == s.end() || it->second.empty()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw ConfigError("setting '" + key + "' is not a number: " + it->second);
  }
}

}  // namespace

void BackendRegistry::add(const std::string& kind, Factory factory) {
  std::unique_lock lock(mutex_);
  factories_[kind] = std::move(factory);
}

bool BackendRegistry::contains(const std::string& kind) const {
  std::shared_lock lock(mutex_);
  return factories_.count(kind) > 0;
}

std::vector<std::string> BackendRegistry::kinds() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [k, _] : factories_) out.push_back(k);
  return out;
}

Device BackendRegistry::create(const std::string& kind, const BackendSettings& settings) const {
  Factory factory;
  {
    std::shared_lock lock(mutex_);
    auto it = factories_.find(kind);
    if (it == factories_.end()) throw ConfigError("unknown backend kind '" + kind + "'");
    factory = it->second;
  }
  return factory(settings);
}

BackendRegistry& BackendRegistry::global() {
  static BackendRegistry* registry = [] {
    auto* r = new BackendRegistry;
    r->add("command", make_command_device);
    return r;
  }();
  return *registry;
}

Device make_command_device(const BackendSettings& settings) {
  CommandBackendConfig config;
  for (PowerDomain d : kAllDomains) {
    const std::string cmd = lookup(settings, "read_power_cmd." + std::string(to_string(d)));
    if (!cmd.empty()) config.read_power_cmd[d] = cmd;
  }
  config.set_limit_cmd = lookup(settings, "set_limit_cmd");
  config.dimm.n_dimm = static_cast<int>(lookup_number(settings, "n_dimm", 0));
  config.dimm.size_gb = lookup_number(settings, "size_gb", 0);
  config.dimm.freq_mhz = lookup_number(settings, "freq_mhz", 0);
  config.tdp_w = lookup_number(settings, "tdp_w", 0);

  auto clock = std::make_shared<SteadyClock>();
  Device device;
  device.backend = std::make_shared<CommandBackend>(config, clock);
  const std::string workload_cmd = lookup(settings, "workload_cmd");
  if (!workload_cmd.empty()) {
    device.workload = std::make_shared<CommandWorkload>(
        workload_cmd, clock,
        static_cast<std::uint64_t>(lookup_number(settings, "batch_size", 128)),
        static_cast<std::uint64_t>(lookup_number(settings, "samples_per_epoch", 50000)));
  }
  return device;
}

}  // namespace frost::hal
