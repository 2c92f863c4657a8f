#include "frost/hal/power.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "frost/error.hpp"

namespace frost::hal {

std::string_view to_string(PowerDomain domain) {
  switch (domain) {
    case PowerDomain::cpu:
      return "cpu";
    case PowerDomain::gpu:
      return "gpu";
    case PowerDomain::dram:
      return "dram";
  }
  return "?";
}

PowerDomain parse_domain(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "cpu") return PowerDomain::cpu;
  if (lower == "gpu") return PowerDomain::gpu;
  if (lower == "dram") return PowerDomain::dram;
  throw InvalidArgument("unknown power domain '" + std::string(text) + "'");
}

void PowerTrace::append(const PowerSample& sample) {
  if (!std::isfinite(sample.watts) || sample.watts < 0.0) {
    throw InvalidArgument("power sample must be finite and non-negative");
  }
  if (!std::isfinite(sample.t) || sample.t < 0.0) {
    throw InvalidArgument("sample time must be finite and non-negative");
  }
  if (!samples_.empty() && sample.t < samples_.back().t) {
    throw InvalidArgument("power samples must be appended in time order");
  }
  samples_.push_back(sample);
}

std::size_t PowerTrace::count(PowerDomain domain) const {
  return static_cast<std::size_t>(std::count_if(
      samples_.begin(), samples_.end(),
      [domain](const PowerSample& s) { return s.domain == domain; }));
}

PowerSeries PowerTrace::series(PowerDomain domain) const {
  PowerSeries out;
  for (const auto& s : samples_) {
    if (s.domain == domain) out.push_back({s.t, s.watts});
  }
  return out;
}

double PowerTrace::start_time() const {
  return samples_.empty() ? 0.0 : samples_.front().t;
}

double PowerTrace::end_time() const {
  return samples_.empty() ? 0.0 : samples_.back().t;
}

PowerTrace PowerTrace::slice(double t0, double t1) const {
  PowerTrace out(session_id_);
  for (const auto& s : samples_) {
    if (s.t >= t0 && s.t <= t1) out.samples_.push_back(s);
  }
  for (const auto& g : gaps_) {
    if (g.t >= t0 && g.t <= t1) out.gaps_.push_back(g);
  }
  return out;
}

void DimmSpec::validate() const {
  if (n_dimm < 0) throw InvalidArgument("n_dimm must be non-negative");
  if (n_dimm > 0 && !(size_gb > 0.0)) {
    throw InvalidArgument("size_gb must be positive when DIMMs are installed");
  }
}

double estimate_dram_power(const DimmSpec& spec) {
  spec.validate();
  if (spec.n_dimm == 0) return 0.0;
  return static_cast<double>(spec.n_dimm) * 0.375 * spec.size_gb;
}

}  // namespace frost::hal
