#pragma once

#include <functional>
#include <span>
#include <vector>

#include "frost/error.hpp"

namespace frost::fitcore {

struct SimplexOptions {
  double x_tol = 1e-10;  // max vertex distance from the best, per coordinate
  double f_tol = 1e-14;  // max objective spread across vertices
  int max_iter = 20000;  // total over all restarts
  int restarts = 2;      // fresh simplices built around the best point

  void validate() const;  // throws InvalidArgument
};

struct SimplexResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

// Thrown when max_iter runs out; carries the best vertex found.
class DidNotConverge : public Error {
 public:
  explicit DidNotConverge(SimplexResult best)
      : Error(ErrorCategory::fit, "DidNotConverge", "simplex hit its iteration cap"),
        best_(std::move(best)) {}
  const SimplexResult& best() const noexcept { return best_; }

 private:
  SimplexResult best_;
};

/// Nelder-Mead with reflection 1, expansion 2, contraction 0.5, shrink 0.5.
///
/// The initial simplex steps each coordinate by `step[i]`, or by 5% of its
/// magnitude (0.00025 at zero) when no step is given. Non-finite objective
/// values are treated as +inf. The returned point is never worse than x0.
/// Throws InvalidArgument when the objective is not finite at x0.
SimplexResult simplex_minimize(const Objective& objective, std::vector<double> x0,
                               const SimplexOptions& options = {},
                               std::span<const double> step = {});

}  // namespace frost::fitcore
