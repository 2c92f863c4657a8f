#include "frost/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

#include "frost/error.hpp"
#include "frost/simdev/sim_backend.hpp"

namespace frost::cli {
namespace pt = boost::property_tree;

namespace {

double number(const pt::ptree& section, const std::string& key, double fallback) {
  auto it = section.find(key);
  if (it == section.not_found()) return fallback;
  try {
    std::size_t used = 0;
    const std::string text = it->second.data();
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error&) {
    throw ConfigError("config key '" + key + "' is not a number: " + it->second.data());
  }
}

bool boolean(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError("config key '" + key + "' is not a boolean: " + text);
}

}  // namespace

void Config::validate() const {
  if (backend_kind.empty()) throw ConfigError("backend kind is empty");
  if (!(sampling_period_s > 0.0)) throw ConfigError("sampling period_s must be > 0");
  if (!(idle_window_s > 0.0)) throw ConfigError("idle window_s must be > 0");
  if (!(actuator_min > 0.0 && actuator_min < actuator_max && actuator_max <= 1.0)) {
    throw ConfigError("actuator bounds must satisfy 0 < min_fraction < max_fraction <= 1");
  }
}

Config parse_config(const std::string& ini_text) {
  pt::ptree tree;
  try {
    std::istringstream in(ini_text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config is not valid INI: ") + e.what());
  }

  Config c;
  c.text = ini_text;
  static const pt::ptree empty;
  auto section = [&](const char* name) -> const pt::ptree& {
    auto it = tree.find(name);
    return it == tree.not_found() ? empty : it->second;
  };

  for (const char* name : {"backend", "command", "dimm"}) {
    for (const auto& [key, value] : section(name)) {
      if (key == "kind") {
        c.backend_kind = value.data();
      } else {
        c.backend[key] = value.data();
      }
    }
  }
  c.sampling_period_s = number(section("sampling"), "period_s", c.sampling_period_s);
  c.idle_window_s = number(section("idle"), "window_s", c.idle_window_s);
  c.actuator_min = number(section("actuator"), "min_fraction", c.actuator_min);
  c.actuator_max = number(section("actuator"), "max_fraction", c.actuator_max);
  const auto& run = section("run");
  const double samples = number(run, "main_samples", 0.0);
  if (samples < 0.0) throw ConfigError("run main_samples must be >= 0");
  c.main_samples = static_cast<std::uint64_t>(samples);
  if (auto it = run.find("reference"); it != run.not_found()) {
    c.reference = boolean("reference", it->second.data());
  }
  c.validate();
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Config c = parse_config(ss.str());
  c.source = path;
  return c;
}

std::optional<std::string> resolve_config_path(const std::optional<std::string>& explicit_path) {
  if (explicit_path && !explicit_path->empty()) return explicit_path;
  if (const char* env = std::getenv(kConfigEnvVar); env && *env) return std::string(env);
  return std::nullopt;
}

Config config_or_default(const std::optional<std::string>& explicit_path) {
  if (auto path = resolve_config_path(explicit_path)) return load_config(*path);
  return parse_config("[backend]\nkind = simulated\narchetype = generic\n");
}

hal::Device make_device(const Config& config) {
  static std::once_flag once;
  std::call_once(once, [] { simdev::register_simulated_backend(hal::BackendRegistry::global()); });
  return hal::BackendRegistry::global().create(config.backend_kind, config.backend);
}

}  // namespace frost::cli
