#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "frost/simdev/model.hpp"

namespace frost::simdev {

struct Archetype {
  DeviceModel device;
  WorkloadSpec workload;
};

/// Named device models and workload archetypes from an INI document.
///
/// Sections are `[device:<name>]` and `[workload:<name>]`; a workload names
/// its default device with `device = <name>`. `[batch] default = a, b, ...`
/// lists the archetypes of the default batch. A device without `c_eff`
/// gets the value that puts dynamic power at f_max on its TDP.
class ArchetypeCatalog {
 public:
  static ArchetypeCatalog parse(std::string_view ini_text);
  static ArchetypeCatalog load(const std::string& path);
  static const ArchetypeCatalog& bundled();

  // Throws UnknownArchetype.
  Archetype archetype(const std::string& name,
                      std::optional<std::string> device = std::nullopt) const;
  // Throws ConfigError.
  DeviceModel device(const std::string& name) const;

  std::vector<std::string> workload_names() const;
  std::vector<std::string> device_names() const;
  const std::vector<std::string>& default_batch() const noexcept { return batch_; }

 private:
  std::map<std::string, DeviceModel> devices_;
  std::map<std::string, WorkloadSpec> workloads_;
  std::map<std::string, std::string> workload_device_;
  std::vector<std::string> batch_;
};

// Archetype from the bundled catalog on its default device.
Archetype archetype(const std::string& name);

// The INI text compiled into the library.
std::string_view bundled_catalog_text();

}  // namespace frost::simdev
