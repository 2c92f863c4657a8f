#include "frost/fitcore/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace frost::fitcore {
namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

struct Counter {
  const Objective& fn;
  int evaluations = 0;

  double operator()(const std::vector<double>& x) {
    ++evaluations;
    const double v = fn(std::span<const double>(x));
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  }
};

std::vector<std::vector<double>> initial_simplex(const std::vector<double>& x0,
                                                 std::span<const double> step) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) {
    double h;
    if (!step.empty()) {
      h = step[i];
    } else {
      h = x0[i] != 0.0 ? 0.05 * x0[i] : 0.00025;
    }
    simplex[i + 1][i] += h;
  }
  return simplex;
}

}  // namespace

void SimplexOptions::validate() const {
  if (!(x_tol > 0.0) || !(f_tol > 0.0)) throw InvalidArgument("simplex tolerances must be > 0");
  if (max_iter < 1) throw InvalidArgument("simplex max_iter must be >= 1");
  if (restarts < 0) throw InvalidArgument("simplex restarts must be >= 0");
}

SimplexResult simplex_minimize(const Objective& objective, std::vector<double> x0,
                               const SimplexOptions& options, std::span<const double> step) {
  options.validate();
  const std::size_t n = x0.size();
  if (n == 0) throw InvalidArgument("simplex needs at least one dimension");
  if (!step.empty() && step.size() != n) throw InvalidArgument("simplex step size mismatch");

  Counter eval{objective};
  const double f0 = eval(x0);
  if (!std::isfinite(f0)) throw InvalidArgument("objective is not finite at the start point");

  SimplexResult best{x0, f0, 0, 0};
  int iterations = 0;

  for (int round = 0; round <= options.restarts; ++round) {
    auto simplex = initial_simplex(best.x, step);
    std::vector<double> fv(n + 1);
    fv[0] = best.f;
    for (std::size_t i = 1; i <= n; ++i) fv[i] = eval(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    bool converged = false;

    while (true) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t l, std::size_t r) { return fv[l] < fv[r]; });
      {
        std::vector<std::vector<double>> s(n + 1);
        std::vector<double> f(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
          s[i] = std::move(simplex[order[i]]);
          f[i] = fv[order[i]];
        }
        simplex = std::move(s);
        fv = std::move(f);
      }

      double x_spread = 0.0;
      double f_spread = 0.0;
      for (std::size_t i = 1; i <= n; ++i) {
        f_spread = std::max(f_spread, std::abs(fv[i] - fv[0]));
        for (std::size_t j = 0; j < n; ++j) {
          x_spread = std::max(x_spread, std::abs(simplex[i][j] - simplex[0][j]));
        }
      }
      if (x_spread <= options.x_tol && f_spread <= options.f_tol) {
        converged = true;
        break;
      }
      if (iterations >= options.max_iter) break;
      ++iterations;

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
      }
      for (double& c : centroid) c /= static_cast<double>(n);

      auto& worst = simplex[n];
      for (std::size_t j = 0; j < n; ++j) {
        xr[j] = centroid[j] + kReflect * (centroid[j] - worst[j]);
      }
      const double fr = eval(xr);

      if (fr < fv[0]) {
        for (std::size_t j = 0; j < n; ++j) {
          xe[j] = centroid[j] + kExpand * (xr[j] - centroid[j]);
        }
        const double fe = eval(xe);
        if (fe < fr) {
          worst = xe;
          fv[n] = fe;
        } else {
          worst = xr;
          fv[n] = fr;
        }
        continue;
      }
      if (fr < fv[n - 1]) {
        worst = xr;
        fv[n] = fr;
        continue;
      }

      // Contraction: outside when the reflection beat the worst point.
      const bool outside = fr < fv[n];
      for (std::size_t j = 0; j < n; ++j) {
        xc[j] = outside ? centroid[j] + kContract * (xr[j] - centroid[j])
                        : centroid[j] + kContract * (worst[j] - centroid[j]);
      }
      const double fc = eval(xc);
      if (fc < (outside ? fr : fv[n])) {
        worst = xc;
        fv[n] = fc;
        continue;
      }

      for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          simplex[i][j] = simplex[0][j] + kShrink * (simplex[i][j] - simplex[0][j]);
        }
        fv[i] = eval(simplex[i]);
      }
    }

    const bool improved = fv[0] < best.f;
    if (fv[0] <= best.f) {
      best.x = simplex[0];
      best.f = fv[0];
    }
    best.iterations = iterations;
    best.evaluations = eval.evaluations;

    if (!converged) throw DidNotConverge(best);
    // A restart that found nothing better means the point is settled.
    if (round > 0 && !improved) break;
  }
  return best;
}

}  // namespace frost::fitcore
