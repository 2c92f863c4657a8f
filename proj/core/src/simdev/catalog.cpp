#include "frost/simdev/catalog.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <sstream>

#include "frost/error.hpp"

namespace frost::simdev {
namespace {

namespace pt = boost::property_tree;

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
T get_or(const pt::ptree& section, const std::string& key, T fallback, const std::string& where) {
  auto value = section.get_optional<std::string>(key);
  if (!value) return fallback;
  try {
    if constexpr (std::is_same_v<T, bool>) {
      const std::string v = trim(*value);
      return v == "true" || v == "1" || v == "yes";
    } else if constexpr (std::is_integral_v<T>) {
      return static_cast<T>(std::stoull(*value));
    } else {
      return static_cast<T>(std::stod(*value));
    }
  } catch (const std::logic_error&) {
    throw ConfigError(where + ": '" + key + "' has a malformed value '" + *value + "'");
  }
}

DeviceModel parse_device(const std::string& name, const pt::ptree& s) {
  const std::string where = "device:" + name;
  DeviceModel m;
  m.name = name;
  m.tdp_w = get_or(s, "tdp_w", m.tdp_w, where);
  m.idle_cpu_w = get_or(s, "idle_cpu_w", m.idle_cpu_w, where);
  m.idle_gpu_w = get_or(s, "idle_gpu_w", m.idle_gpu_w, where);
  m.v0 = get_or(s, "v0", m.v0, where);
  m.v_slope = get_or(s, "v_slope", m.v_slope, where);
  m.f_max = get_or(s, "f_max", m.f_max, where);
  m.ops_rate = get_or(s, "ops_rate", m.ops_rate, where);
  m.instability_floor = get_or(s, "instability_floor", m.instability_floor, where);
  m.noise_sigma = get_or(s, "noise_sigma", m.noise_sigma, where);
  m.seed = get_or<std::uint64_t>(s, "seed", m.seed, where);
  m.dimm.n_dimm = get_or(s, "n_dimm", m.dimm.n_dimm, where);
  m.dimm.size_gb = get_or(s, "dimm_size_gb", m.dimm.size_gb, where);
  m.dimm.freq_mhz = get_or(s, "dimm_freq_mhz", m.dimm.freq_mhz, where);
  m.dram_sensor = get_or(s, "dram_sensor", m.dram_sensor, where);
  m.boost_ratio = get_or(s, "boost_ratio", m.boost_ratio, where);
  m.boost_duration_s = get_or(s, "boost_duration_s", m.boost_duration_s, where);
  m.boost_interval_s = get_or(s, "boost_interval_s", m.boost_interval_s, where);
  m.c_eff = get_or(s, "c_eff", m.calibrated_c_eff(), where);
  try {
    m.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return m;
}

WorkloadSpec parse_workload(const std::string& name, const pt::ptree& s) {
  const std::string where = "workload:" + name;
  WorkloadSpec w;
  w.name = name;
  w.samples_per_epoch = get_or<std::uint64_t>(s, "samples_per_epoch", w.samples_per_epoch, where);
  w.batch_size = get_or<std::uint64_t>(s, "batch_size", w.batch_size, where);
  w.compute_intensity = get_or(s, "compute_intensity", w.compute_intensity, where);
  w.membound_fraction = get_or(s, "membound_fraction", w.membound_fraction, where);
  w.overlap = get_or(s, "overlap", w.overlap, where);
  w.base_util = get_or(s, "base_util", w.base_util, where);
  w.host_w = get_or(s, "host_w", w.host_w, where);
  try {
    w.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return w;
}

}  // namespace

ArchetypeCatalog ArchetypeCatalog::parse(std::string_view ini_text) {
  pt::ptree tree;
  std::istringstream in{std::string(ini_text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("archetype catalog: ") + e.what());
  }

  ArchetypeCatalog catalog;
  for (const auto& [section, body] : tree) {
    if (section.rfind("device:", 0) == 0) {
      const std::string name = section.substr(7);
      catalog.devices_[name] = parse_device(name, body);
    }
  }
  for (const auto& [section, body] : tree) {
    if (section.rfind("workload:", 0) == 0) {
      const std::string name = section.substr(9);
      catalog.workloads_[name] = parse_workload(name, body);
      const std::string device = trim(body.get<std::string>("device", ""));
      if (device.empty() || catalog.devices_.count(device) == 0) {
        throw ConfigError("workload:" + name + " names unknown device '" + device + "'");
      }
      catalog.workload_device_[name] = device;
    } else if (section == "batch") {
      std::stringstream list(body.get<std::string>("default", ""));
      std::string item;
      while (std::getline(list, item, ',')) {
        item = trim(item);
        if (!item.empty()) catalog.batch_.push_back(item);
      }
    }
  }
  for (const auto& name : catalog.batch_) {
    if (catalog.workloads_.count(name) == 0) {
      throw ConfigError("batch lists unknown archetype '" + name + "'");
    }
  }
  return catalog;
}

ArchetypeCatalog ArchetypeCatalog::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read archetype catalog " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const ArchetypeCatalog& ArchetypeCatalog::bundled() {
  static const ArchetypeCatalog catalog = parse(bundled_catalog_text());
  return catalog;
}

Archetype ArchetypeCatalog::archetype(const std::string& name,
                                      std::optional<std::string> device) const {
  auto it = workloads_.find(name);
  if (it == workloads_.end()) throw UnknownArchetype("unknown archetype '" + name + "'");
  return Archetype{this->device(device.value_or(workload_device_.at(name))), it->second};
}

DeviceModel ArchetypeCatalog::device(const std::string& name) const {
  auto it = devices_.find(name);
  if (it == devices_.end()) throw ConfigError("unknown device model '" + name + "'");
  return it->second;
}

std::vector<std::string> ArchetypeCatalog::workload_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : workloads_) out.push_back(name);
  return out;
}

std::vector<std::string> ArchetypeCatalog::device_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : devices_) out.push_back(name);
  return out;
}

Archetype archetype(const std::string& name) { return ArchetypeCatalog::bundled().archetype(name); }

}  // namespace frost::simdev
