#include "frost/cli/overhead.hpp"

#include <chrono>
#include <cmath>
#include <json.hpp>

#include "frost/cli/stats.hpp"
#include "frost/error.hpp"
#include "frost/hal/sampler.hpp"
#include "frost/simdev/catalog.hpp"
#include "frost/simdev/sim_backend.hpp"

namespace frost::cli {
namespace {

using Wall = std::chrono::steady_clock;

double busy_work(std::uint64_t iterations) {
  double acc = 0.0;
  std::uint64_t x = 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t i = 0; i < iterations; ++i) {
    x = x * 6364136223846793005ULL + 1442695040888963407ULL;
    acc += std::sqrt(static_cast<double>(x >> 11));
  }
  return acc;
}

volatile double g_sink = 0.0;

double timed(std::uint64_t iterations) {
  const auto t0 = Wall::now();
  g_sink = g_sink + busy_work(iterations);
  return std::chrono::duration<double>(Wall::now() - t0).count();
}

}  // namespace

OverheadReport measure_overhead(const OverheadOptions& options, hal::PowerBackend* backend) {
  if (!(options.period_s > 0.0)) throw InvalidArgument("sampling period must be positive");
  if (options.reps < 1) throw InvalidArgument("overhead needs at least one repetition");
  if (!(options.work_s > 0.0)) throw InvalidArgument("work_s must be positive");

  std::shared_ptr<simdev::SimulatedBackend> sim_backend;
  if (!backend) {
    const auto arch = simdev::archetype(options.archetype);
    auto device = std::make_shared<simdev::SimDevice>(arch.device);
    device->begin_work(arch.workload);
    sim_backend =
        std::make_shared<simdev::SimulatedBackend>(device, std::make_shared<hal::SteadyClock>());
    backend = sim_backend.get();
  }

  // Size the job: grow until one run takes a measurable time, then scale.
  std::uint64_t iterations = 1 << 16;
  double t = timed(iterations);
  while (t < 0.1) {
    iterations *= 4;
    t = timed(iterations);
  }
  // The first runs are slow while the core warms up, so rescale once more
  // from a full-length run.
  for (int pass = 0; pass < 2; ++pass) {
    iterations = static_cast<std::uint64_t>(static_cast<double>(iterations) * options.work_s / t);
    if (iterations == 0) iterations = 1;
    t = timed(iterations);
  }

  OverheadReport report;
  report.period_s = options.period_s;
  report.reps = options.reps;
  report.sampler_on = options.sampler_on;

  auto measured_run = [&] {
    if (!options.sampler_on) return timed(iterations);
    auto session = hal::start_sampler(*backend, options.period_s, "overhead");
    const double s = timed(iterations);
    report.samples_collected += session.stop().size();
    return s;
  };

  for (int i = 0; i < options.reps; ++i) {
    if (i % 2 == 0) {
      report.baseline_s.push_back(timed(iterations));
      report.measured_s.push_back(measured_run());
    } else {
      report.measured_s.push_back(measured_run());
      report.baseline_s.push_back(timed(iterations));
    }
  }
  report.baseline_median_s = median(report.baseline_s);
  report.measured_median_s = median(report.measured_s);
  // Both runs of a pair are adjacent, so their ratio cancels slow drift in
  // the machine's speed that the two separate medians would keep.
  std::vector<double> ratios;
  for (std::size_t i = 0; i < report.baseline_s.size(); ++i) {
    ratios.push_back(report.measured_s[i] / report.baseline_s[i]);
  }
  report.overhead_pct = 100.0 * (median(ratios) - 1.0);
  return report;
}

std::string to_json(const OverheadReport& report, int indent) {
  nlohmann::json doc = {{"period_s", report.period_s},
                        {"reps", report.reps},
                        {"sampler_on", report.sampler_on},
                        {"baseline_s", report.baseline_s},
                        {"measured_s", report.measured_s},
                        {"baseline_median_s", report.baseline_median_s},
                        {"measured_median_s", report.measured_median_s},
                        {"overhead_pct", report.overhead_pct},
                        {"samples_collected", report.samples_collected}};
  return doc.dump(indent);
}

}  // namespace frost::cli
