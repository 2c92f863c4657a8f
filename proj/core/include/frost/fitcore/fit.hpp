#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "frost/fitcore/curve.hpp"
#include "frost/fitcore/simplex.hpp"

namespace frost::fitcore {

inline constexpr double kConvergenceThreshold = 0.05;

struct FitOptions {
  SimplexOptions simplex{1e-9, 1e-16, 4000, 1};
  int starts = 16;
  std::uint64_t seed = 0x5eed;
  double c_bound = 10.0;  // |c| limit; a and c trade off against each other
  bool parallel = false;  // evaluate starts on separate threads
};

struct FitResult {
  FitCoefficients coeffs;
  double rel_error = 0.0;  // RMSE / mean |y|
  bool converged = false;
  std::size_t n_points = 0;
  bool degenerate = false;  // all y equal; coeffs is the constant g
  double mse = 0.0;

  // (x, F(x)) from lo to hi inclusive.
  std::vector<std::pair<double, double>> sample(double lo, double hi, double step = 0.01) const;
};

/// Least-squares fit of F to the points by downhill simplex.
///
/// Each start runs the simplex over the nonlinear (b, e, f) with the linear
/// a, d, g solved exactly, then the best candidate is polished over all 7
/// coefficients. Deterministic for a given seed whether or not the starts
/// run in parallel. Throws EmptyPointSet.
FitResult fit_curve(std::span<const FitPoint> points, const FitOptions& options = {});

// Argmin of the fitted curve on [lo, hi]. Throws NotConverged for a fit that
// did not converge and InvalidArgument unless 0 <= lo < hi <= 1.
double find_minimum(const FitResult& fit, double lo, double hi);

}  // namespace frost::fitcore
