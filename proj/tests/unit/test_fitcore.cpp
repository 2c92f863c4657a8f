#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "frost/error.hpp"
#include "frost/fitcore/curve.hpp"
#include "frost/fitcore/fit.hpp"
#include "frost/fitcore/simplex.hpp"
#include "frost/policy/policy.hpp"
#include "oracles.hpp"
#include "sim_fixture.hpp"

using namespace frost;
using namespace frost::fitcore;

namespace {

// Exponential rise plus a falling sigmoid step: minimum near x = 0.85.
constexpr double kBowl[7] = {0.05, 3.0, 0.0, -2.0, 10.0, 6.0, 3.0};

FitCoefficients coeffs_of(const double k[7]) { return FitCoefficients::from_array({k, 7}); }

std::vector<FitPoint> sample_points(const double k[7], std::vector<double> xs) {
  std::vector<FitPoint> pts;
  for (double x : xs) pts.push_back({x, oracle::curve(k, x)});
  return pts;
}

std::vector<double> default_xs() { return {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}; }

FitResult converged_fit(const double k[7]) {
  FitResult r;
  r.coeffs = coeffs_of(k);
  r.converged = true;
  r.n_points = 8;
  return r;
}

}  // namespace

TEST(Sigmoid, HalfAtZero) { EXPECT_EQ(sigmoid(0.0), 0.5); }

TEST(Sigmoid, ReflectionIdentity) {
  for (double x = -40.0; x <= 40.0; x += 0.37) {
    EXPECT_NEAR(sigmoid(-x), 1.0 - sigmoid(x), 1e-15) << x;
  }
}

TEST(Sigmoid, StableAtExtremes) {
  EXPECT_EQ(sigmoid(1000.0), 1.0);
  EXPECT_EQ(sigmoid(-1000.0), 0.0);
  EXPECT_TRUE(std::isfinite(sigmoid(-700.0)));
  EXPECT_GT(sigmoid(-700.0), 0.0);
  for (double x = -30.0; x <= 30.0; x += 0.5) EXPECT_NEAR(sigmoid(x), oracle::logistic(x), 1e-15);
}

TEST(EvalF, ConstantCases) {
  const FitCoefficients five{0, 0, 0, 0, 0, 0, 5};
  const FitCoefficients one{1, 0, 0, 0, 0, 0, 0};
  for (double x = 0.0; x <= 1.0; x += 0.1) {
    EXPECT_EQ(eval_f(five, x), 5.0);
    EXPECT_EQ(eval_f(one, x), 1.0);
  }
}

TEST(EvalF, MatchesIndependentArithmetic) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    double k[7];
    for (double& v : k) v = u(rng);
    EXPECT_NEAR(eval_f(coeffs_of(k), 0.5), oracle::curve(k, 0.5),
                1e-12 * std::max(1.0, std::abs(oracle::curve(k, 0.5))));
  }
}

TEST(EvalF, ReducesToEachTermAlone) {
  for (double x = 0.0; x <= 1.0; x += 0.05) {
    EXPECT_NEAR(eval_f({2, 1.5, 0.3, 0, 7, 1, 0.5}, x), 2.0 * std::exp(1.5 * x - 0.3) + 0.5, 1e-12);
    EXPECT_NEAR(eval_f({0, 1.5, 0.3, 3, 7, 1, 0.5}, x), 3.0 * oracle::logistic(7 * x - 1) + 0.5,
                1e-12);
  }
}

TEST(EvalF, ExponentIsClamped) {
  EXPECT_TRUE(std::isfinite(eval_f({1, 1e6, 0, 0, 0, 0, 0}, 1.0)));
  EXPECT_EQ(clamped_exp(1e6), std::exp(700.0));
}

TEST(Mse, ZeroOnExactPoints) {
  const auto pts = sample_points(kBowl, default_xs());
  EXPECT_NEAR(mse(coeffs_of(kBowl), pts), 0.0, 1e-28);
}

TEST(Mse, ConstantFitGivesPopulationVariance) {
  const std::vector<double> ys{1.0, 4.0, 2.5, 8.0, 3.0};
  std::vector<FitPoint> pts;
  double mean = 0.0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    pts.push_back({0.1 * i, ys[i]});
    mean += ys[i] / ys.size();
  }
  EXPECT_NEAR(mse({0, 0, 0, 0, 0, 0, mean}, pts), oracle::population_variance(ys), 1e-12);
}

TEST(Mse, MatchesBruteForceOnRandomPoints) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<double, double>> xy;
  std::vector<FitPoint> pts;
  for (int i = 0; i < 50; ++i) {
    const double x = u(rng), y = 10.0 * u(rng);
    xy.push_back({x, y});
    pts.push_back({x, y});
  }
  EXPECT_NEAR(mse(coeffs_of(kBowl), pts), oracle::mean_sq_residual(kBowl, xy), 1e-12);
  EXPECT_GE(mse(coeffs_of(kBowl), pts), 0.0);
}

TEST(Mse, EmptyThrows) {
  EXPECT_THROW(mse(coeffs_of(kBowl), std::vector<FitPoint>{}), EmptyPointSet);
}

TEST(Simplex, OneDimensionalParabola) {
  const auto r = simplex_minimize([](std::span<const double> x) { return (x[0] - 2) * (x[0] - 2); },
                                  {0.0});
  EXPECT_NEAR(r.x[0], 2.0, 1e-6);
}

TEST(Simplex, Rosenbrock) {
  auto rosen = [](std::span<const double> x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  const auto r = simplex_minimize(rosen, {-1.2, 1.0});
  EXPECT_NEAR(r.x[0], 1.0, 1e-3);
  EXPECT_NEAR(r.x[1], 1.0, 1e-3);
}

TEST(Simplex, IterationCapCarriesBestSoFar) {
  SimplexOptions opts;
  opts.max_iter = 1;
  auto f = [](std::span<const double> x) { return std::pow(x[0] - 3, 2) + std::pow(x[1] + 1, 2); };
  try {
    simplex_minimize(f, {0.0, 0.0}, opts);
    FAIL() << "expected DidNotConverge";
  } catch (const DidNotConverge& e) {
    ASSERT_EQ(e.best().x.size(), 2u);
    EXPECT_LE(e.best().f, f(std::vector<double>{0.0, 0.0}));
  }
}

TEST(Simplex, NeverWorseThanStart) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  auto bumpy = [](std::span<const double> x) {
    return std::sin(3 * x[0]) * std::cos(2 * x[1]) + 0.1 * (x[0] * x[0] + x[1] * x[1]);
  };
  for (int i = 0; i < 20; ++i) {
    std::vector<double> x0{u(rng), u(rng)};
    EXPECT_LE(simplex_minimize(bumpy, x0).f, bumpy(x0));
  }
}

TEST(Simplex, RejectsNonFiniteStartAndBadOptions) {
  EXPECT_THROW(simplex_minimize([](std::span<const double>) { return NAN; }, {1.0}),
               InvalidArgument);
  SimplexOptions bad;
  bad.x_tol = 0.0;
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = SimplexOptions{};
  bad.max_iter = 0;
  EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(FitCurve, RecoversNoiselessCurve) {
  const auto pts = sample_points(kBowl, default_xs());
  const FitResult r = fit_curve(pts);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.rel_error, 1e-4);
  EXPECT_EQ(r.n_points, 8u);
  const double truth = oracle::grid_argmin([](double x) { return oracle::curve(kBowl, x); }, 0.3, 1.0);
  EXPECT_NEAR(find_minimum(r, 0.3, 1.0), truth, 0.01);
}

TEST(FitCurve, RecoversSeveralShapes) {
  const double shapes[][7] = {
      {0.2, 2.0, 0.0, 1.5, -12.0, -5.0, 0.5},
      {1.0, -4.0, 0.0, 0.5, 15.0, 9.0, 0.2},
      {0.01, 5.0, 1.0, -1.0, 8.0, 4.0, 2.0},
  };
  for (const auto& k : shapes) {
    const FitResult r = fit_curve(sample_points(k, default_xs()));
    EXPECT_LT(r.rel_error, 1e-4);
    const double truth = oracle::grid_argmin([&](double x) { return oracle::curve(k, x); }, 0.3, 1.0);
    EXPECT_NEAR(find_minimum(r, 0.3, 1.0), truth, 0.01);
  }
}

TEST(FitCurve, FlatPointsGiveConstantFit) {
  std::vector<FitPoint> pts;
  for (double x : default_xs()) pts.push_back({x, 4.25});
  const FitResult r = fit_curve(pts);
  EXPECT_TRUE(r.converged);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.rel_error, 0.0);
  EXPECT_EQ(r.coeffs.g, 4.25);
  EXPECT_EQ(eval_f(r.coeffs, 0.77), 4.25);
}

TEST(FitCurve, EmptyThrows) { EXPECT_THROW(fit_curve(std::vector<FitPoint>{}), EmptyPointSet); }

TEST(FitCurve, ConvergedMeansUnderFivePercent) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<FitPoint> pts;
    for (double x : default_xs()) pts.push_back({x, u(rng)});
    const FitResult r = fit_curve(pts);
    EXPECT_GE(r.rel_error, 0.0);
    EXPECT_EQ(r.converged, r.rel_error < kConvergenceThreshold);
  }
}

TEST(FitCurve, DeterministicForASeed) {
  std::vector<FitPoint> pts = sample_points(kBowl, default_xs());
  pts[3].y *= 1.03;
  const FitResult a = fit_curve(pts);
  const FitResult b = fit_curve(pts);
  EXPECT_EQ(a.coeffs.to_array(), b.coeffs.to_array());
  EXPECT_EQ(a.rel_error, b.rel_error);
}

TEST(FitCurve, ParallelStartsMatchSequential) {
  std::vector<FitPoint> pts = sample_points(kBowl, default_xs());
  pts[5].y *= 0.97;
  FitOptions par;
  par.parallel = true;
  const FitResult a = fit_curve(pts);
  const FitResult b = fit_curve(pts, par);
  EXPECT_EQ(a.coeffs.to_array(), b.coeffs.to_array());
  EXPECT_EQ(a.rel_error, b.rel_error);
}

TEST(FitCurve, SampleCoversTheRangeInOnePercentSteps) {
  const FitResult r = converged_fit(kBowl);
  const auto curve = r.sample(0.3, 1.0);
  ASSERT_EQ(curve.size(), 71u);
  EXPECT_DOUBLE_EQ(curve.front().first, 0.3);
  EXPECT_DOUBLE_EQ(curve.back().first, 1.0);
  EXPECT_NEAR(curve[30].second, oracle::curve(kBowl, 0.6), 1e-12);
}

TEST(FitCurve, ConvergesOnNoisyArchetypeScores) {
  testing_support::SimRig rig("mobilenet-like");
  const auto points = rig.sweep().points;
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> noise(0.0, 0.05);
  int converged = 0;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<FitPoint> pts;
    for (const auto& p : points) pts.push_back({p.limit_fraction, policy::score(p, 1) * (1.0 + noise(rng))});
    converged += fit_curve(pts).converged ? 1 : 0;
  }
  EXPECT_GE(converged, 9);
}

TEST(FindMinimum, InteriorMinimumMatchesDenseGrid) {
  // F'(0.6) = 10 - 40 * sigmoid'(0) = 0, and F is convex on [0.3, 1].
  const double at_sixty[7] = {1.0, 10.0, 6.0, -40.0, 1.0, 0.6, 0.0};
  const double truth =
      oracle::grid_argmin([&](double x) { return oracle::curve(at_sixty, x); }, 0.3, 1.0);
  EXPECT_NEAR(truth, 0.6, 1e-4);
  EXPECT_NEAR(find_minimum(converged_fit(at_sixty), 0.3, 1.0), 0.6, 1e-3);
  const double bowl =
      oracle::grid_argmin([](double x) { return oracle::curve(kBowl, x); }, 0.3, 1.0);
  EXPECT_NEAR(find_minimum(converged_fit(kBowl), 0.3, 1.0), bowl, 1e-3);
}

TEST(FindMinimum, MonotoneCurvesGoToTheEnds) {
  const double rising[7] = {1.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  const double falling[7] = {1.0, -2.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  EXPECT_EQ(find_minimum(converged_fit(rising), 0.3, 1.0), 0.3);
  EXPECT_EQ(find_minimum(converged_fit(falling), 0.3, 1.0), 1.0);
}

TEST(FindMinimum, StaysInsideTheRange) {
  for (double lo : {0.3, 0.45}) {
    for (double hi : {0.7, 0.95}) {
      const double x = find_minimum(converged_fit(kBowl), lo, hi);
      EXPECT_GE(x, lo);
      EXPECT_LE(x, hi);
    }
  }
}

TEST(FindMinimum, RejectsUnconvergedFitAndBadRange) {
  FitResult r = converged_fit(kBowl);
  EXPECT_THROW(find_minimum(r, 0.8, 0.3), InvalidArgument);
  EXPECT_THROW(find_minimum(r, -0.1, 0.5), InvalidArgument);
  r.converged = false;
  EXPECT_THROW(find_minimum(r, 0.3, 1.0), NotConverged);
}
