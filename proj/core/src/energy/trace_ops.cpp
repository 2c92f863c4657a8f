#include "frost/energy/trace_ops.hpp"

#include <algorithm>
#include <string>

#include "frost/error.hpp"

namespace frost::energy {

double integrate_series(const PowerSeries& series) {
  if (series.size() < 2) throw NotIntegrable("need at least two samples to integrate");
  double joules = 0.0;
  for (std::size_t i = 1; i < series.size(); ++i) {
    joules += 0.5 * (series[i].watts + series[i - 1].watts) * (series[i].t - series[i - 1].t);
  }
  return joules;
}

double integrate_trace(const PowerTrace& trace, PowerDomain domain) {
  const PowerSeries series = trace.series(domain);
  if (series.size() < 2) {
    throw NotIntegrable("domain " + std::string(hal::to_string(domain)) + " has " +
                        std::to_string(series.size()) + " sample(s)");
  }
  return integrate_series(series);
}

double interpolate(const PowerSeries& series, double t) {
  if (series.empty()) throw NotIntegrable("cannot interpolate an empty series");
  if (t <= series.front().t) return series.front().watts;
  if (t >= series.back().t) return series.back().watts;
  auto hi = std::upper_bound(series.begin(), series.end(), t,
                             [](double value, const hal::TimedWatts& s) { return value < s.t; });
  auto lo = hi - 1;
  const double dt = hi->t - lo->t;
  if (dt <= 0.0) return hi->watts;
  const double w = (t - lo->t) / dt;
  return lo->watts + w * (hi->watts - lo->watts);
}

double integrate_window(const PowerSeries& series, double t0, double t1) {
  if (series.size() < 2) throw NotIntegrable("need at least two samples to integrate");
  if (!(t1 >= t0)) throw InvalidArgument("integration window must have t1 >= t0");
  if (t1 == t0) return 0.0;
  double joules = 0.0;
  double prev_t = t0;
  double prev_w = interpolate(series, t0);
  for (const auto& s : series) {
    if (s.t <= t0) continue;
    if (s.t >= t1) break;
    joules += 0.5 * (prev_w + s.watts) * (s.t - prev_t);
    prev_t = s.t;
    prev_w = s.watts;
  }
  joules += 0.5 * (prev_w + interpolate(series, t1)) * (t1 - prev_t);
  return joules;
}

PowerSeries sum_domains(const std::map<PowerDomain, PowerSeries>& per_domain) {
  for (PowerDomain d : hal::kAllDomains) {
    auto it = per_domain.find(d);
    if (it == per_domain.end() || it->second.empty()) {
      throw MissingDomain("no samples for domain " + std::string(hal::to_string(d)));
    }
  }
  std::vector<double> grid;
  for (const auto& [_, series] : per_domain) {
    for (const auto& s : series) grid.push_back(s.t);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  PowerSeries out;
  out.reserve(grid.size());
  for (double t : grid) {
    double total = 0.0;
    for (PowerDomain d : hal::kAllDomains) total += interpolate(per_domain.at(d), t);
    out.push_back({t, total});
  }
  return out;
}

PowerSeries sum_domains(const PowerTrace& trace) {
  std::map<PowerDomain, PowerSeries> per_domain;
  for (PowerDomain d : hal::kAllDomains) per_domain[d] = trace.series(d);
  return sum_domains(per_domain);
}

}  // namespace frost::energy
