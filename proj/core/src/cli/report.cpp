#include "frost/cli/report.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "frost/error.hpp"
#include "frost/policy/policy_io.hpp"

namespace frost::cli {

using nlohmann::json;

namespace {

json trace_json(const hal::PowerTrace& trace) {
  json samples = json::array();
  for (const auto& s : trace.samples()) {
    samples.push_back({s.t, hal::to_string(s.domain), s.watts});
  }
  json gaps = json::array();
  for (const auto& g : trace.gaps()) gaps.push_back({g.t, hal::to_string(g.domain)});
  return {{"session_id", trace.session_id()}, {"samples", samples}, {"gaps", gaps}};
}

hal::PowerTrace trace_from(const json& j) {
  hal::PowerTrace trace(j.at("session_id").get<std::string>());
  for (const auto& s : j.at("samples")) {
    trace.append({s.at(0).get<double>(), s.at(2).get<double>(),
                  hal::parse_domain(s.at(1).get<std::string>())});
  }
  for (const auto& g : j.at("gaps")) {
    trace.mark_gap({g.at(0).get<double>(), hal::parse_domain(g.at(1).get<std::string>())});
  }
  return trace;
}

json breakdown_json(const energy::EnergyBreakdown& e) {
  return {{"cpu_j", e.joules[0]}, {"gpu_j", e.joules[1]},    {"dram_j", e.joules[2]},
          {"total_j", e.total_j}, {"duration_s", e.duration_s}, {"clamped", e.clamped}};
}

energy::EnergyBreakdown breakdown_from(const json& j) {
  energy::EnergyBreakdown e;
  e.joules = {j.at("cpu_j").get<double>(), j.at("gpu_j").get<double>(),
              j.at("dram_j").get<double>()};
  e.total_j = j.at("total_j").get<double>();
  e.duration_s = j.at("duration_s").get<double>();
  e.clamped = j.at("clamped").get<bool>();
  return e;
}

json probe_json(const profiler::ProbePoint& p) {
  return {{"limit", p.limit_fraction},
          {"energy_j", p.energy_j},
          {"duration_s", p.duration_s},
          {"samples", p.samples_processed},
          {"energy_per_sample_j", p.energy_per_sample_j},
          {"throughput_sps", p.throughput_sps},
          {"delay_per_sample_s", p.delay_per_sample_s()}};
}

profiler::ProbePoint probe_from(const json& j) {
  profiler::ProbePoint p;
  p.limit_fraction = j.at("limit").get<double>();
  p.energy_j = j.at("energy_j").get<double>();
  p.duration_s = j.at("duration_s").get<double>();
  p.samples_processed = j.at("samples").get<std::uint64_t>();
  p.energy_per_sample_j = j.at("energy_per_sample_j").get<double>();
  p.throughput_sps = j.at("throughput_sps").get<double>();
  return p;
}

json probes_json(const std::vector<profiler::ProbePoint>& points) {
  json out = json::array();
  for (const auto& p : points) out.push_back(probe_json(p));
  return out;
}

std::vector<profiler::ProbePoint> probes_from(const json& j) {
  std::vector<profiler::ProbePoint> out;
  for (const auto& p : j) out.push_back(probe_from(p));
  return out;
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

json fit_json(const fitcore::FitResult& fit, double lo, double hi) {
  const auto& k = fit.coeffs;
  json curve = json::array();
  for (const auto& [x, y] : fit.sample(lo, hi, 0.01)) curve.push_back({x, y});
  return {{"coefficients",
           {{"a", k.a}, {"b", k.b}, {"c", k.c}, {"d", k.d}, {"e", k.e}, {"f", k.f}, {"g", k.g}}},
          {"rel_error", fit.rel_error},
          {"converged", fit.converged},
          {"n_points", fit.n_points},
          {"degenerate", fit.degenerate},
          {"mse", fit.mse},
          {"curve", curve}};
}

fitcore::FitResult fit_from(const json& j) {
  fitcore::FitResult fit;
  const auto& k = j.at("coefficients");
  fit.coeffs = {k.at("a").get<double>(), k.at("b").get<double>(), k.at("c").get<double>(),
                k.at("d").get<double>(), k.at("e").get<double>(), k.at("f").get<double>(),
                k.at("g").get<double>()};
  fit.rel_error = j.at("rel_error").get<double>();
  fit.converged = j.at("converged").get<bool>();
  fit.n_points = j.at("n_points").get<std::size_t>();
  fit.degenerate = j.at("degenerate").get<bool>();
  fit.mse = j.at("mse").get<double>();
  return fit;
}

policy::DecisionMethod method_from(const std::string& s) {
  if (s == "fitted") return policy::DecisionMethod::fitted;
  if (s == "measured_fallback") return policy::DecisionMethod::measured_fallback;
  throw ConfigError("unknown decision method '" + s + "'");
}

json decision_json(const policy::Decision& d, const policy::PolicyDoc& p) {
  return {{"chosen_limit", d.chosen_limit},
          {"predicted_score", d.predicted_score},
          {"method", policy::to_string(d.method)},
          {"m", d.m},
          {"guard_applied", d.guard_applied},
          {"fit", d.fit ? fit_json(*d.fit, p.limit_lo, p.limit_hi) : json(nullptr)},
          {"probe_points", probes_json(d.probe_points)}};
}

policy::Decision decision_from(const json& j) {
  policy::Decision d;
  d.chosen_limit = j.at("chosen_limit").get<double>();
  d.predicted_score = j.at("predicted_score").get<double>();
  d.method = method_from(j.at("method").get<std::string>());
  d.m = j.at("m").get<int>();
  d.guard_applied = j.at("guard_applied").get<bool>();
  if (!j.at("fit").is_null()) d.fit = fit_from(j.at("fit"));
  d.probe_points = probes_from(j.at("probe_points"));
  return d;
}

json phase_json(const PhaseRecord& p) {
  return {{"limit", p.limit_fraction},
          {"t_start", p.t_start},
          {"t_end", p.t_end},
          {"duration_s", p.duration_s()},
          {"samples", p.samples},
          {"mean_utilization", optional_json(p.mean_utilization)},
          {"energy", breakdown_json(p.net)},
          {"trace", trace_json(p.trace)}};
}

PhaseRecord phase_from(const json& j) {
  PhaseRecord p;
  p.limit_fraction = j.at("limit").get<double>();
  p.t_start = j.at("t_start").get<double>();
  p.t_end = j.at("t_end").get<double>();
  p.samples = j.at("samples").get<std::uint64_t>();
  p.mean_utilization = optional_from<double>(j, "mean_utilization");
  p.net = breakdown_from(j.at("energy"));
  p.trace = trace_from(j.at("trace"));
  return p;
}

json run_json(const RunReport& r) {
  json windows = json::array();
  for (const auto& w : r.windows) {
    windows.push_back({{"limit", w.limit_fraction},
                       {"t_start", w.t_start},
                       {"t_measure_begin", w.t_measure_begin},
                       {"t_measure_end", w.t_measure_end},
                       {"t_end", w.t_end}});
  }
  json exponents = json::array();
  for (const auto& e : r.exponents) {
    exponents.push_back({{"m", e.m},
                         {"chosen_limit", e.chosen_limit},
                         {"predicted_score", e.predicted_score},
                         {"method", policy::to_string(e.method)}});
  }
  json tradeoff = nullptr;
  if (r.tradeoff) {
    tradeoff = {{"reference_limit", r.tradeoff->reference_limit},
                {"energy_saving_pct", r.tradeoff->energy_saving_pct},
                {"time_increase_pct", r.tradeoff->time_increase_pct}};
  }
  return {
      {"kind", "run"},
      {"generated_at", r.generated_at},
      {"workload", r.workload},
      {"backend", r.backend},
      {"config", r.config_text},
      {"policy", json::parse(policy::policy_to_json(r.policy))},
      {"idle",
       {{"t_m", r.idle.t_m},
        {"mean_watts",
         {{"cpu", r.idle.mean_watts[0]}, {"gpu", r.idle.mean_watts[1]}, {"dram", r.idle.mean_watts[2]}}},
        {"trace", trace_json(r.idle_trace)}}},
      {"probes", probes_json(r.probes)},
      {"probe_windows", windows},
      {"sweep_trace", trace_json(r.sweep_trace)},
      {"decision", decision_json(r.decision, r.policy)},
      {"main", phase_json(r.main)},
      {"reference", r.reference ? phase_json(*r.reference) : json(nullptr)},
      {"account",
       {{"probe_energy_j", r.account.probe_energy_j},
        {"main_energy_j", r.account.main_energy_j},
        {"idle_correction_j", r.account.idle_correction_j},
        {"net_j", r.account.net_j},
        {"clamped", r.account.clamped}}},
      {"exponents", exponents},
      {"tradeoff", tradeoff},
      {"analysis",
       {{"r_energy_duration", optional_json(r.analysis.r_energy_duration)},
        {"r_power_throughput", optional_json(r.analysis.r_power_throughput)}}},
      {"timing",
       {{"idle_s", r.timing.idle_s},
        {"sweep_s", r.timing.sweep_s},
        {"main_s", r.timing.main_s},
        {"reference_s", r.timing.reference_s},
        {"total_s", r.timing.total_s}}},
  };
}

RunReport run_from(const json& j) {
  RunReport r;
  r.generated_at = j.at("generated_at").get<std::string>();
  r.workload = j.at("workload").get<std::string>();
  r.backend = j.at("backend").get<std::string>();
  r.config_text = j.at("config").get<std::string>();
  r.policy = policy::parse_policy(j.at("policy").dump());

  const auto& idle = j.at("idle");
  r.idle.t_m = idle.at("t_m").get<double>();
  const auto& mw = idle.at("mean_watts");
  r.idle.mean_watts = {mw.at("cpu").get<double>(), mw.at("gpu").get<double>(),
                       mw.at("dram").get<double>()};
  r.idle_trace = trace_from(idle.at("trace"));

  r.probes = probes_from(j.at("probes"));
  for (const auto& w : j.at("probe_windows")) {
    r.windows.push_back({w.at("limit").get<double>(), w.at("t_start").get<double>(),
                         w.at("t_measure_begin").get<double>(),
                         w.at("t_measure_end").get<double>(), w.at("t_end").get<double>()});
  }
  r.sweep_trace = trace_from(j.at("sweep_trace"));
  r.decision = decision_from(j.at("decision"));
  r.main = phase_from(j.at("main"));
  if (!j.at("reference").is_null()) r.reference = phase_from(j.at("reference"));

  const auto& a = j.at("account");
  r.account.probe_energy_j = a.at("probe_energy_j").get<double>();
  r.account.main_energy_j = a.at("main_energy_j").get<double>();
  r.account.idle_correction_j = a.at("idle_correction_j").get<double>();
  r.account.net_j = a.at("net_j").get<double>();
  r.account.clamped = a.at("clamped").get<bool>();

  for (const auto& e : j.at("exponents")) {
    r.exponents.push_back({e.at("m").get<int>(), e.at("chosen_limit").get<double>(),
                           e.at("predicted_score").get<double>(),
                           method_from(e.at("method").get<std::string>())});
  }
  if (!j.at("tradeoff").is_null()) {
    const auto& t = j.at("tradeoff");
    r.tradeoff = Tradeoff{t.at("reference_limit").get<double>(),
                          t.at("energy_saving_pct").get<double>(),
                          t.at("time_increase_pct").get<double>()};
  }
  r.analysis.r_energy_duration = optional_from<double>(j.at("analysis"), "r_energy_duration");
  r.analysis.r_power_throughput = optional_from<double>(j.at("analysis"), "r_power_throughput");
  const auto& t = j.at("timing");
  r.timing = {t.at("idle_s").get<double>(), t.at("sweep_s").get<double>(),
              t.at("main_s").get<double>(), t.at("reference_s").get<double>(),
              t.at("total_s").get<double>()};
  return r;
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("report is not valid JSON: ") + e.what());
  }
}

template <typename Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("report is malformed: ") + e.what());
  }
}

}  // namespace

std::string to_json(const RunReport& report, int indent) {
  return run_json(report).dump(indent);
}

std::string to_json(const policy::Decision& decision, const policy::PolicyDoc& policy,
                    int indent) {
  return decision_json(decision, policy).dump(indent);
}

std::string to_json(const fitcore::FitResult& fit, double lo, double hi, int indent) {
  return fit_json(fit, lo, hi).dump(indent);
}

std::string to_json(const energy::IdleBaseline& idle, int indent) {
  json doc = {{"t_m", idle.t_m},
              {"cpu_w", idle.mean_watts[0]},
              {"gpu_w", idle.mean_watts[1]},
              {"dram_w", idle.mean_watts[2]},
              {"total_w", idle.total()}};
  return doc.dump(indent);
}

std::string to_json(const BatchReport& report, int indent) {
  json runs = json::array();
  for (const auto& r : report.runs) runs.push_back(run_json(r));
  json doc = {{"kind", "batch"},
              {"generated_at", report.generated_at},
              {"summary",
               {{"mean_energy_saving_pct", report.mean_energy_saving_pct},
                {"mean_time_increase_pct", report.mean_time_increase_pct},
                {"r_energy_duration", optional_json(report.r_energy_duration)}}},
              {"runs", runs}};
  return doc.dump(indent);
}

std::string report_kind(const std::string& json_text) {
  const json doc = parse_document(json_text);
  if (!doc.is_object() || !doc.contains("kind") || !doc.at("kind").is_string()) {
    throw UnknownFormat("document is not a run or batch report");
  }
  const auto kind = doc.at("kind").get<std::string>();
  if (kind != "run" && kind != "batch") throw UnknownFormat("unknown report kind '" + kind + "'");
  return kind;
}

RunReport parse_run_report(const std::string& json_text) {
  if (report_kind(json_text) != "run") throw UnknownFormat("expected a run report");
  return guarded([&] { return run_from(parse_document(json_text)); });
}

BatchReport parse_batch_report(const std::string& json_text) {
  if (report_kind(json_text) != "batch") throw UnknownFormat("expected a batch report");
  return guarded([&] {
    const json doc = parse_document(json_text);
    BatchReport b;
    b.generated_at = doc.at("generated_at").get<std::string>();
    const auto& s = doc.at("summary");
    b.mean_energy_saving_pct = s.at("mean_energy_saving_pct").get<double>();
    b.mean_time_increase_pct = s.at("mean_time_increase_pct").get<double>();
    b.r_energy_duration = optional_from<double>(s, "r_energy_duration");
    for (const auto& r : doc.at("runs")) b.runs.push_back(run_from(r));
    return b;
  });
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace frost::cli
