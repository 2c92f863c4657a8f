#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace frost::hal {

enum class PowerDomain { cpu, gpu, dram };

inline constexpr std::array<PowerDomain, 3> kAllDomains = {
    PowerDomain::cpu, PowerDomain::gpu, PowerDomain::dram};

std::string_view to_string(PowerDomain domain);
// Accepts "cpu"/"CPU", etc. Throws InvalidArgument on anything else.
PowerDomain parse_domain(std::string_view text);

constexpr std::size_t index_of(PowerDomain domain) {
  return static_cast<std::size_t>(domain);
}

struct PowerSample {
  double t = 0.0;      // seconds since session start
  double watts = 0.0;
  PowerDomain domain = PowerDomain::gpu;
};

// A sensor read that failed at time t. Integration treats the interval
// around a gap like any other, but the sampler never invents a value for it.
struct TraceGap {
  double t = 0.0;
  PowerDomain domain = PowerDomain::gpu;
};

struct TimedWatts {
  double t = 0.0;
  double watts = 0.0;
};

using PowerSeries = std::vector<TimedWatts>;

/// Time-ordered multi-domain power record.
///
/// Samples of all domains are interleaved in one vector sorted by t; each
/// domain's subsequence is itself time ordered.
class PowerTrace {
 public:
  PowerTrace() = default;
  explicit PowerTrace(std::string session_id) : session_id_(std::move(session_id)) {}

  // Appends a sample. Throws InvalidArgument on negative or non-finite
  // watts, or when t would move backwards.
  void append(const PowerSample& sample);
  void mark_gap(const TraceGap& gap) { gaps_.push_back(gap); }

  const std::vector<PowerSample>& samples() const noexcept { return samples_; }
  const std::vector<TraceGap>& gaps() const noexcept { return gaps_; }
  const std::string& session_id() const noexcept { return session_id_; }
  void set_session_id(std::string id) { session_id_ = std::move(id); }

  bool empty() const noexcept { return samples_.empty(); }
  std::size_t size() const noexcept { return samples_.size(); }
  std::size_t count(PowerDomain domain) const;
  bool has_domain(PowerDomain domain) const { return count(domain) > 0; }
  // At least two samples in the domain.
  bool integrable(PowerDomain domain) const { return count(domain) >= 2; }

  PowerSeries series(PowerDomain domain) const;

  double start_time() const;
  double end_time() const;
  double span() const { return empty() ? 0.0 : end_time() - start_time(); }

  // Samples with t in [t0, t1] (inclusive), gaps included likewise.
  PowerTrace slice(double t0, double t1) const;

 private:
  std::string session_id_;
  std::vector<PowerSample> samples_;
  std::vector<TraceGap> gaps_;
};

struct DimmSpec {
  int n_dimm = 0;
  double size_gb = 0.0;
  double freq_mhz = 0.0;  // informational only

  // Throws InvalidArgument when the invariants do not hold.
  void validate() const;
};

// Rule-of-thumb DRAM draw for platforms without DRAM counters:
// 3/8 W per installed gigabyte, independent of load.
double estimate_dram_power(const DimmSpec& spec);

}  // namespace frost::hal
