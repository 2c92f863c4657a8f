#include "frost/fitcore/curve.hpp"

#include <cmath>

#include "frost/error.hpp"

namespace frost::fitcore {

FitCoefficients FitCoefficients::from_array(std::span<const double> v) {
  if (v.size() != 7) throw InvalidArgument("fit coefficients need exactly 7 values");
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
}

bool FitCoefficients::finite() const {
  for (double v : to_array()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double sigmoid(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double z = std::exp(x);
  return z / (1.0 + z);
}

double clamped_exp(double x) noexcept { return std::exp(x < 700.0 ? x : 700.0); }

double eval_f(const FitCoefficients& k, double x) noexcept {
  return k.a * clamped_exp(k.b * x - k.c) + k.d * sigmoid(k.e * x - k.f) + k.g;
}

double mse(const FitCoefficients& k, std::span<const FitPoint> points) {
  if (points.empty()) throw EmptyPointSet("mse over an empty point set");
  double sum = 0.0;
  for (const auto& p : points) {
    const double r = p.y - eval_f(k, p.x);
    sum += r * r;
  }
  return sum / static_cast<double>(points.size());
}

}  // namespace frost::fitcore
