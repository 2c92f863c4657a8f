#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "frost/fitcore/fit.hpp"
#include "frost/profiler/schedule.hpp"

namespace frost::policy {

using profiler::ProbePoint;

struct PolicyDoc {
  std::string policy_id = "default";
  int version = 1;
  int m = 1;  // delay exponent, 0..3
  double limit_lo = 0.3;
  double limit_hi = 1.0;
  profiler::ProbeSchedule schedule = profiler::default_schedule();
  std::optional<double> max_delay_increase_pct;

  void validate() const;  // throws InvalidArgument
};

enum class DecisionMethod { fitted, measured_fallback };
std::string_view to_string(DecisionMethod method);

struct Decision {
  double chosen_limit = 1.0;
  double predicted_score = 0.0;
  DecisionMethod method = DecisionMethod::measured_fallback;
  std::optional<fitcore::FitResult> fit;
  std::vector<ProbePoint> probe_points;  // the evidence, sorted by limit
  int m = 1;
  bool guard_applied = false;
};

// energy per sample times (delay per sample)^m.
double score(const ProbePoint& point, int m);

// Points not dominated in (energy per sample, delay per sample), input order.
std::vector<ProbePoint> pareto_front(std::span<const ProbePoint> points);

/// Picks the cap for one policy.
///
/// Fits F to (limit, score) over the in-bounds probes. A converged fit
/// decides by its minimum within the probed part of [limit_lo, limit_hi];
/// otherwise the lowest measured score wins, ties going to the lower limit.
/// With a delay guard the choice moves to the best-scoring probe whose delay
/// stays within the allowed increase over the limit_hi probe.
/// Throws InsufficientPoints with fewer than two in-bounds probes.
Decision decide(std::span<const ProbePoint> points, const PolicyDoc& policy,
                const fitcore::FitOptions& fit_options = {});

// The fallback rule on its own: measured argmin of the score in [lo, hi].
Decision decide_measured(std::span<const ProbePoint> points, int m, double lo, double hi);

std::map<int, Decision> compare_exponents(std::span<const ProbePoint> points,
                                          std::span<const int> ms, const PolicyDoc& policy,
                                          const fitcore::FitOptions& fit_options = {});

}  // namespace frost::policy
