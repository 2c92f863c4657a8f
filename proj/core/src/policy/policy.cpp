#include "frost/policy/policy.hpp"

#include <algorithm>
#include <cmath>

#include "frost/error.hpp"

namespace frost::policy {
namespace {

constexpr double kBoundSlack = 1e-9;

std::vector<ProbePoint> in_bounds(std::span<const ProbePoint> points, double lo, double hi) {
  std::vector<ProbePoint> out;
  for (const auto& p : points) {
    if (p.limit_fraction >= lo - kBoundSlack && p.limit_fraction <= hi + kBoundSlack) {
      out.push_back(p);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const ProbePoint& a, const ProbePoint& b) {
    return a.limit_fraction < b.limit_fraction;
  });
  if (out.size() < 2) {
    throw InsufficientPoints("need at least two probe points inside the policy bounds, got " +
                             std::to_string(out.size()));
  }
  return out;
}

// Index of the lowest score among `allowed`, ties to the lower limit. The
// points are sorted by limit so the first strict minimum is the answer.
std::size_t argmin_score(const std::vector<ProbePoint>& pts, int m,
                         const std::vector<bool>& allowed) {
  std::size_t best = pts.size();
  double best_score = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!allowed[i]) continue;
    const double s = score(pts[i], m);
    if (best == pts.size() || s < best_score) {
      best = i;
      best_score = s;
    }
  }
  return best;
}

// Per-sample delay at an arbitrary cap, linear between neighbouring probes.
double delay_at(const std::vector<ProbePoint>& pts, double limit) {
  if (limit <= pts.front().limit_fraction) return pts.front().delay_per_sample_s();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (limit <= pts[i].limit_fraction) {
      const auto& a = pts[i - 1];
      const auto& b = pts[i];
      const double w = (limit - a.limit_fraction) / (b.limit_fraction - a.limit_fraction);
      return a.delay_per_sample_s() + w * (b.delay_per_sample_s() - a.delay_per_sample_s());
    }
  }
  return pts.back().delay_per_sample_s();
}

void apply_guard(Decision& d, double max_increase_pct) {
  const auto& pts = d.probe_points;
  const double allowed = pts.back().delay_per_sample_s() * (1.0 + max_increase_pct / 100.0);
  if (delay_at(pts, d.chosen_limit) <= allowed) return;
  std::vector<bool> ok(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) ok[i] = pts[i].delay_per_sample_s() <= allowed;
  // The limit_hi probe is its own reference and always qualifies.
  ok.back() = true;
  const std::size_t i = argmin_score(pts, d.m, ok);
  d.chosen_limit = pts[i].limit_fraction;
  d.predicted_score = score(pts[i], d.m);
  d.guard_applied = true;
}

}  // namespace

void PolicyDoc::validate() const {
  if (m < 0 || m > 3) throw InvalidArgument("policy m must be one of 0, 1, 2, 3");
  if (!(limit_lo >= 0.3 - kBoundSlack && limit_lo < limit_hi && limit_hi <= 1.0)) {
    throw InvalidArgument("policy bounds must satisfy 0.3 <= limit_lo < limit_hi <= 1.0");
  }
  schedule.validate();
  if (max_delay_increase_pct && !(*max_delay_increase_pct >= 0.0)) {
    throw InvalidArgument("max_delay_increase_pct must be >= 0");
  }
}

std::string_view to_string(DecisionMethod method) {
  return method == DecisionMethod::fitted ? "fitted" : "measured_fallback";
}

double score(const ProbePoint& point, int m) {
  return point.energy_per_sample_j * std::pow(point.delay_per_sample_s(), m);
}

std::vector<ProbePoint> pareto_front(std::span<const ProbePoint> points) {
  std::vector<ProbePoint> front;
  for (const auto& p : points) {
    const bool dominated = std::any_of(points.begin(), points.end(), [&](const ProbePoint& q) {
      const double qe = q.energy_per_sample_j, pe = p.energy_per_sample_j;
      const double qd = q.delay_per_sample_s(), pd = p.delay_per_sample_s();
      return qe <= pe && qd <= pd && (qe < pe || qd < pd);
    });
    if (!dominated) front.push_back(p);
  }
  return front;
}

Decision decide_measured(std::span<const ProbePoint> points, int m, double lo, double hi) {
  Decision d;
  d.m = m;
  d.probe_points = in_bounds(points, lo, hi);
  const std::size_t i = argmin_score(d.probe_points, m, std::vector<bool>(d.probe_points.size(), true));
  d.chosen_limit = d.probe_points[i].limit_fraction;
  d.predicted_score = score(d.probe_points[i], m);
  d.method = DecisionMethod::measured_fallback;
  return d;
}

Decision decide(std::span<const ProbePoint> points, const PolicyDoc& policy,
                const fitcore::FitOptions& fit_options) {
  policy.validate();
  Decision d = decide_measured(points, policy.m, policy.limit_lo, policy.limit_hi);

  std::vector<fitcore::FitPoint> xy;
  for (const auto& p : d.probe_points) xy.push_back({p.limit_fraction, score(p, policy.m)});
  d.fit = fitcore::fit_curve(xy, fit_options);

  if (d.fit->converged) {
    // Never extrapolate past the probes that were actually measured.
    const double lo = std::max(policy.limit_lo, d.probe_points.front().limit_fraction);
    const double hi = std::min(policy.limit_hi, d.probe_points.back().limit_fraction);
    d.chosen_limit = fitcore::find_minimum(*d.fit, lo, hi);
    d.predicted_score = fitcore::eval_f(d.fit->coeffs, d.chosen_limit);
    d.method = DecisionMethod::fitted;
  }
  if (policy.max_delay_increase_pct) apply_guard(d, *policy.max_delay_increase_pct);
  return d;
}

std::map<int, Decision> compare_exponents(std::span<const ProbePoint> points,
                                          std::span<const int> ms, const PolicyDoc& policy,
                                          const fitcore::FitOptions& fit_options) {
  std::map<int, Decision> out;
  for (int m : ms) {
    PolicyDoc p = policy;
    p.m = m;
    out.emplace(m, decide(points, p, fit_options));
  }
  return out;
}

}  // namespace frost::policy
