#pragma once

#include <span>

namespace frost::cli {

// Sample Pearson correlation. Throws InvalidArgument for mismatched or
// too-short inputs and DegenerateVariance when either side is constant.
double pearson_r(std::span<const double> xs, std::span<const double> ys);

double median(std::span<const double> values);

}  // namespace frost::cli
