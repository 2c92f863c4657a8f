#pragma once

#include <array>
#include <span>

namespace frost::fitcore {

// F(x) = a*exp(b*x - c) + d*sigmoid(e*x - f) + g
struct FitCoefficients {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0, f = 0.0, g = 0.0;

  std::array<double, 7> to_array() const { return {a, b, c, d, e, f, g}; }
  static FitCoefficients from_array(std::span<const double> v);
  bool finite() const;
};

struct FitPoint {
  double x = 0.0;
  double y = 0.0;
};

// Logistic function, stable over the whole double range.
double sigmoid(double x) noexcept;

// exp() with its argument clamped at 700.
double clamped_exp(double x) noexcept;

double eval_f(const FitCoefficients& k, double x) noexcept;

// Mean squared residual. Throws EmptyPointSet.
double mse(const FitCoefficients& k, std::span<const FitPoint> points);

}  // namespace frost::fitcore
