#include "frost/cli/render.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

#include "frost/cli/report.hpp"
#include "frost/error.hpp"
#include "frost/fitcore/curve.hpp"

namespace frost::cli {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

void fig2_rows(std::ostream& out, const RunReport& r) {
  auto row = [&](const char* phase, const PhaseRecord& p) {
    const double d = p.duration_s();
    out << r.workload << ',' << phase << ',' << num(p.limit_fraction) << ',' << num(p.net.total_j)
        << ',' << num(d) << ',' << num(d > 0.0 ? p.net.total_j / d : 0.0) << ','
        << opt(p.mean_utilization) << '\n';
  };
  row("main", r.main);
  if (r.reference) row("reference", *r.reference);
}

void fig4_rows(std::ostream& out, const RunReport& r) {
  const int m = r.decision.m;
  for (const auto& p : r.probes) {
    const double fitted =
        r.decision.fit ? fitcore::eval_f(r.decision.fit->coeffs, p.limit_fraction) : 0.0;
    out << r.workload << ',' << num(p.limit_fraction) << ',' << num(p.energy_j) << ','
        << num(p.duration_s) << ',' << num(p.energy_per_sample_j) << ','
        << num(p.delay_per_sample_s()) << ',' << num(policy::score(p, m)) << ','
        << (r.decision.fit ? num(fitted) : std::string()) << '\n';
  }
}

void fig5_rows(std::ostream& out, const RunReport& r) {
  for (const auto& e : r.exponents) {
    out << r.workload << ',' << e.m << ',' << num(e.chosen_limit) << ','
        << num(e.predicted_score) << ',' << policy::to_string(e.method) << '\n';
  }
}

void fig6_row(std::ostream& out, const RunReport& r) {
  out << r.workload << ',' << num(r.decision.chosen_limit) << ','
      << (r.tradeoff ? num(r.tradeoff->energy_saving_pct) : std::string()) << ','
      << (r.tradeoff ? num(r.tradeoff->time_increase_pct) : std::string()) << '\n';
}

}  // namespace

RenderFormat parse_format(std::string_view name) {
  if (name == "fig2") return RenderFormat::fig2;
  if (name == "fig4") return RenderFormat::fig4;
  if (name == "fig5") return RenderFormat::fig5;
  if (name == "fig6") return RenderFormat::fig6;
  if (name == "summary") return RenderFormat::summary;
  throw UnknownFormat("unknown report format '" + std::string(name) +
                      "' (fig2, fig4, fig5, fig6, summary)");
}

std::string render(const std::string& report_json, RenderFormat format) {
  std::vector<RunReport> runs;
  std::optional<BatchReport> batch;
  if (report_kind(report_json) == "batch") {
    batch = parse_batch_report(report_json);
    runs = batch->runs;
  } else {
    runs.push_back(parse_run_report(report_json));
  }

  std::ostringstream out;
  switch (format) {
    case RenderFormat::fig2:
      out << "workload,phase,limit,energy_j,duration_s,mean_power_w,utilization\n";
      for (const auto& r : runs) fig2_rows(out, r);
      break;
    case RenderFormat::fig4:
      out << "workload,limit,energy_j,duration_s,energy_per_sample_j,delay_per_sample_s,score,"
             "fitted_score\n";
      for (const auto& r : runs) fig4_rows(out, r);
      break;
    case RenderFormat::fig5:
      out << "workload,m,chosen_limit,predicted_score,method\n";
      for (const auto& r : runs) fig5_rows(out, r);
      break;
    case RenderFormat::fig6:
      out << "workload,chosen_limit,energy_saving_pct,time_increase_pct\n";
      for (const auto& r : runs) fig6_row(out, r);
      if (batch) {
        out << "mean,," << num(batch->mean_energy_saving_pct) << ','
            << num(batch->mean_time_increase_pct) << '\n';
      }
      break;
    case RenderFormat::summary:
      if (batch) {
        out << "runs=" << runs.size() << " energy_saving_pct=" << num(batch->mean_energy_saving_pct)
            << " time_increase_pct=" << num(batch->mean_time_increase_pct) << '\n';
      } else {
        const auto& r = runs.front();
        out << "workload=" << r.workload << " chosen_limit=" << num(r.decision.chosen_limit)
            << " net_energy_j=" << num(r.account.net_j);
        if (r.tradeoff) {
          out << " energy_saving_pct=" << num(r.tradeoff->energy_saving_pct)
              << " time_increase_pct=" << num(r.tradeoff->time_increase_pct);
        }
        out << '\n';
      }
      break;
  }
  return out.str();
}

}  // namespace frost::cli
