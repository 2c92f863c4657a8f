#include "frost/fitcore/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>

#include "frost/error.hpp"

namespace frost::fitcore {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxRate = 60.0;  // |b| and |e| beyond this only fit noise

struct Candidate {
  FitCoefficients coeffs;
  double mse = kInf;
};

// Best a, d, g for fixed b, e, f (c held at 0).
Candidate solve_linear(std::span<const FitPoint> pts, double b, double e, double f) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& p = pts[static_cast<std::size_t>(i)];
    design(i, 0) = clamped_exp(b * p.x);
    design(i, 1) = sigmoid(e * p.x - f);
    design(i, 2) = 1.0;
    y(i) = p.y;
  }
  const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(y);
  Candidate out;
  out.coeffs = {coef(0), b, 0.0, coef(1), e, f, coef(2)};
  if (!out.coeffs.finite()) return out;
  out.mse = mse(out.coeffs, pts);
  return out;
}

Candidate run_start(std::span<const FitPoint> pts, const FitOptions& options,
                    std::array<double, 3> start) {
  auto objective = [&](std::span<const double> v) {
    if (std::abs(v[0]) > kMaxRate || std::abs(v[1]) > kMaxRate) return kInf;
    return solve_linear(pts, v[0], v[1], v[2]).mse;
  };
  const std::array<double, 3> step{1.0, 2.0, 1.0};
  std::vector<double> x(start.begin(), start.end());
  try {
    x = simplex_minimize(objective, x, options.simplex, step).x;
  } catch (const DidNotConverge& e) {
    x = e.best().x;
  } catch (const InvalidArgument&) {
    return {};
  }
  return solve_linear(pts, x[0], x[1], x[2]);
}

Candidate polish(std::span<const FitPoint> pts, const FitOptions& options, Candidate from) {
  auto objective = [&](std::span<const double> v) {
    if (std::abs(v[2]) > options.c_bound) return kInf;
    return mse(FitCoefficients::from_array(v), pts);
  };
  const auto arr = from.coeffs.to_array();
  try {
    auto r = simplex_minimize(objective, {arr.begin(), arr.end()}, options.simplex);
    if (r.f < from.mse) return {FitCoefficients::from_array(r.x), r.f};
  } catch (const DidNotConverge& e) {
    if (e.best().f < from.mse) return {FitCoefficients::from_array(e.best().x), e.best().f};
  } catch (const InvalidArgument&) {
  }
  return from;
}

}  // namespace

std::vector<std::pair<double, double>> FitResult::sample(double lo, double hi,
                                                         double step) const {
  if (!(step > 0.0)) throw InvalidArgument("sample step must be positive");
  std::vector<std::pair<double, double>> out;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = std::round((lo + static_cast<double>(i) * step) * 1e9) / 1e9;
    out.emplace_back(x, eval_f(coeffs, x));
  }
  return out;
}

FitResult fit_curve(std::span<const FitPoint> points, const FitOptions& options) {
  if (points.empty()) throw EmptyPointSet("cannot fit an empty point set");
  if (options.starts < 1) throw InvalidArgument("fit needs at least one start");
  options.simplex.validate();

  FitResult result;
  result.n_points = points.size();

  double y_min = kInf, y_max = -kInf, x_min = kInf, x_max = -kInf, scale = 0.0;
  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InvalidArgument("non-finite fit point");
    y_min = std::min(y_min, p.y);
    y_max = std::max(y_max, p.y);
    x_min = std::min(x_min, p.x);
    x_max = std::max(x_max, p.x);
    scale += std::abs(p.y);
  }
  scale /= static_cast<double>(points.size());

  if (scale == 0.0 || y_max - y_min <= 1e-12 * scale) {
    result.coeffs.g = points.front().y;
    result.degenerate = true;
    result.converged = true;
    result.mse = mse(result.coeffs, points);
    result.rel_error = scale > 0.0 ? std::sqrt(result.mse) / scale : 0.0;
    return result;
  }

  // Fit on y / mean|y| so tolerances do not depend on the score's units.
  std::vector<FitPoint> scaled(points.begin(), points.end());
  for (auto& p : scaled) p.y /= scale;

  const double span = x_max > x_min ? x_max - x_min : 1.0;
  std::vector<std::array<double, 3>> starts;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> jitter(-0.1, 0.1);
  const double bs[] = {-5.0, -1.0, 1.0, 5.0};
  const double es[] = {5.0, 10.0};
  for (int i = 0; i < options.starts; ++i) {
    const int k = i % 16;
    const double b = bs[k % 4] * (1.0 + jitter(rng));
    const double e = es[(k / 4) % 2] * (1.0 + jitter(rng));
    const double mid = x_min + span * ((k / 8) % 2 == 0 ? 1.0 / 3.0 : 2.0 / 3.0);
    const double jm = jitter(rng) * span;
    starts.push_back({b, e, e * (mid + (i < 16 ? 0.0 : jm))});
  }

  std::vector<Candidate> found(starts.size());
  if (options.parallel) {
    std::vector<std::future<Candidate>> jobs;
    for (const auto& s : starts) {
      jobs.push_back(std::async(std::launch::async,
                                [&scaled, &options, s] { return run_start(scaled, options, s); }));
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) found[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < starts.size(); ++i) found[i] = run_start(scaled, options, starts[i]);
  }

  // Strict comparison keeps the lowest start index on ties.
  Candidate best;
  for (const auto& c : found) {
    if (c.mse < best.mse) best = c;
  }
  if (!std::isfinite(best.mse)) {
    // Every start failed; fall back to the mean.
    best.coeffs = {};
    best.coeffs.g = 1.0;
    best.mse = mse(best.coeffs, scaled);
  }
  best = polish(scaled, options, best);

  best.coeffs.a *= scale;
  best.coeffs.d *= scale;
  best.coeffs.g *= scale;
  result.coeffs = best.coeffs;
  result.mse = mse(result.coeffs, points);
  result.rel_error = std::sqrt(result.mse) / scale;
  result.converged = result.rel_error < kConvergenceThreshold;
  return result;
}

double find_minimum(const FitResult& fit, double lo, double hi) {
  if (!fit.converged) throw NotConverged("fit did not converge; refusing to locate its minimum");
  if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
    throw InvalidArgument("find_minimum needs 0 <= lo < hi <= 1");
  }
  auto at = [&](double x) { return eval_f(fit.coeffs, std::clamp(x, lo, hi)); };

  // Endpoints first, then a 1-D simplex from evenly spread interior starts.
  double best_x = lo;
  double best_f = at(lo);
  auto consider = [&](double x, double f) {
    if (f < best_f || (f == best_f && x < best_x)) {
      best_x = x;
      best_f = f;
    }
  };
  consider(hi, at(hi));

  SimplexOptions opts{1e-10, 1e-15, 500, 1};
  const int n_starts = 20;
  const double step[] = {(hi - lo) / 40.0};
  for (int i = 0; i < n_starts; ++i) {
    const double x0 = lo + (hi - lo) * (i + 0.5) / n_starts;
    auto objective = [&](std::span<const double> v) {
      const double x = v[0];
      // Flat extension outside the range plus a slope keeps the search inside.
      if (x < lo) return at(lo) + (lo - x) * (1.0 + std::abs(at(lo)));
      if (x > hi) return at(hi) + (x - hi) * (1.0 + std::abs(at(hi)));
      return at(x);
    };
    double x;
    try {
      x = simplex_minimize(objective, {x0}, opts, step).x[0];
    } catch (const DidNotConverge& e) {
      x = e.best().x[0];
    }
    x = std::clamp(x, lo, hi);
    // A search that ran into an end stops within its tolerance of it.
    if (hi - x < 1e-9) x = hi;
    if (x - lo < 1e-9) x = lo;
    consider(x, at(x));
  }
  return best_x;
}

}  // namespace frost::fitcore
