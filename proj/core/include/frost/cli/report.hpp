#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frost/energy/accounting.hpp"
#include "frost/policy/policy.hpp"
#include "frost/profiler/sweep.hpp"

namespace frost::cli {

// A workload phase at one fixed cap, with its own trace.
struct PhaseRecord {
  double limit_fraction = 1.0;
  double t_start = 0.0;
  double t_end = 0.0;
  std::uint64_t samples = 0;
  std::optional<double> mean_utilization;
  energy::EnergyBreakdown net;  // idle-subtracted
  hal::PowerTrace trace;

  double duration_s() const { return t_end - t_start; }
};

struct ExponentRow {
  int m = 1;
  double chosen_limit = 1.0;
  double predicted_score = 0.0;
  policy::DecisionMethod method = policy::DecisionMethod::measured_fallback;
};

// Main phase against the same workload run at limit_hi.
struct Tradeoff {
  double reference_limit = 1.0;
  double energy_saving_pct = 0.0;
  double time_increase_pct = 0.0;
};

struct Analysis {
  std::optional<double> r_energy_duration;  // across probes
  std::optional<double> r_power_throughput;
};

struct Timing {
  double idle_s = 0.0;
  double sweep_s = 0.0;
  double main_s = 0.0;
  double reference_s = 0.0;
  double total_s = 0.0;  // device clock, start to finish
};

/// Everything one pipeline run produced. Self-contained: the config and
/// policy documents and every power trace are embedded, so energies can be
/// recomputed from the report alone.
struct RunReport {
  std::string generated_at;  // the only field that varies between identical runs
  std::string workload;
  std::string backend;
  std::string config_text;
  policy::PolicyDoc policy;

  energy::IdleBaseline idle;
  hal::PowerTrace idle_trace;

  std::vector<profiler::ProbePoint> probes;
  std::vector<profiler::ProbeWindow> windows;
  hal::PowerTrace sweep_trace;

  policy::Decision decision;
  PhaseRecord main;
  std::optional<PhaseRecord> reference;
  energy::PipelineAccount account;

  std::vector<ExponentRow> exponents;
  std::optional<Tradeoff> tradeoff;
  Analysis analysis;
  Timing timing;
};

// Several runs of the same policy over different workloads.
struct BatchReport {
  std::string generated_at;
  std::vector<RunReport> runs;
  double mean_energy_saving_pct = 0.0;
  double mean_time_increase_pct = 0.0;
  std::optional<double> r_energy_duration;  // reference runs across workloads
};

std::string to_json(const RunReport& report, int indent = 2);
std::string to_json(const policy::Decision& decision, const policy::PolicyDoc& policy,
                    int indent = 2);
// The fitted curve is sampled at 1% steps over [lo, hi].
std::string to_json(const fitcore::FitResult& fit, double lo, double hi, int indent = 2);
std::string to_json(const energy::IdleBaseline& idle, int indent = 2);
std::string to_json(const BatchReport& report, int indent = 2);

// Throws UnknownFormat when the document is neither kind, ConfigError when
// it is malformed.
RunReport parse_run_report(const std::string& json_text);
BatchReport parse_batch_report(const std::string& json_text);
// "run" or "batch".
std::string report_kind(const std::string& json_text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

std::string utc_timestamp();

}  // namespace frost::cli
