#pragma once

#include <map>

#include "frost/hal/power.hpp"

namespace frost::energy {

using hal::PowerDomain;
using hal::PowerSeries;
using hal::PowerTrace;

// Trapezoidal integral in joules. Exact for piecewise-linear power.
// Throws NotIntegrable with fewer than two samples.
double integrate_series(const PowerSeries& series);
double integrate_trace(const PowerTrace& trace, PowerDomain domain);

// Linear interpolation, holding the end values outside the sampled range.
double interpolate(const PowerSeries& series, double t);

// Integral over [t0, t1] with interpolated end points. The series must have
// at least two samples; values beyond its ends are held constant.
double integrate_window(const PowerSeries& series, double t0, double t1);

// Pointwise sum over the union of all sample times, interpolating each
// domain linearly where it has no sample. Throws MissingDomain unless every
// domain has at least one sample.
PowerSeries sum_domains(const std::map<PowerDomain, PowerSeries>& per_domain);
PowerSeries sum_domains(const PowerTrace& trace);

}  // namespace frost::energy
