#include "frost/policy/policy_io.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "frost/error.hpp"

namespace frost::policy {

using nlohmann::json;

PolicyDoc parse_policy(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("policy is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("policy document must be a JSON object");

  PolicyDoc p;
  try {
    p.policy_id = doc.value("policy_id", p.policy_id);
    p.version = doc.value("version", p.version);
    if (doc.contains("m")) {
      const auto& m = doc.at("m");
      if (!m.is_number()) throw ConfigError("policy m must be a number");
      const double v = m.get<double>();
      if (v != std::floor(v)) throw InvalidArgument("policy m must be an integer");
      p.m = static_cast<int>(v);
    }
    p.limit_lo = doc.value("limit_lo", p.limit_lo);
    p.limit_hi = doc.value("limit_hi", p.limit_hi);
    if (doc.contains("probe")) {
      const auto& probe = doc.at("probe");
      if (probe.contains("limits")) p.schedule.limits = probe.at("limits").get<std::vector<double>>();
      p.schedule.probe_duration_s = probe.value("duration_s", p.schedule.probe_duration_s);
      p.schedule.warmup_s = probe.value("warmup_s", p.schedule.warmup_s);
    }
    if (doc.contains("max_delay_increase_pct") && !doc.at("max_delay_increase_pct").is_null()) {
      p.max_delay_increase_pct = doc.at("max_delay_increase_pct").get<double>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("policy field has the wrong type: ") + e.what());
  }
  p.validate();
  return p;
}

PolicyDoc load_policy(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read policy file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_policy(ss.str());
}

std::string policy_to_json(const PolicyDoc& policy, int indent) {
  json doc = {
      {"policy_id", policy.policy_id},
      {"version", policy.version},
      {"m", policy.m},
      {"limit_lo", policy.limit_lo},
      {"limit_hi", policy.limit_hi},
      {"probe",
       {{"limits", policy.schedule.limits},
        {"duration_s", policy.schedule.probe_duration_s},
        {"warmup_s", policy.schedule.warmup_s}}},
  };
  if (policy.max_delay_increase_pct) doc["max_delay_increase_pct"] = *policy.max_delay_increase_pct;
  return doc.dump(indent);
}

}  // namespace frost::policy
