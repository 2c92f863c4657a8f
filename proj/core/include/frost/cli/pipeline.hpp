#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frost/cli/config.hpp"
#include "frost/cli/report.hpp"
#include "frost/fitcore/fit.hpp"
#include "frost/hal/actuator.hpp"
#include "frost/policy/policy.hpp"

namespace frost::cli {

// Idle baseline from a sampled window, keeping the trace.
struct IdleMeasurement {
  energy::IdleBaseline baseline;
  hal::PowerTrace trace;
};
IdleMeasurement measure_idle_traced(hal::PowerBackend& backend, double window_s, double period_s);

/// The whole flow on an already built device: idle baseline, probe sweep,
/// fit and decision, main phase at the chosen cap, optional reference phase
/// at limit_hi, energy accounting. The device cap is restored afterwards,
/// whether the run succeeds or throws.
RunReport run_pipeline(const hal::Device& device, const Config& config,
                       const policy::PolicyDoc& policy,
                       const fitcore::FitOptions& fit_options = {});

// Builds the configured device first.
RunReport run_pipeline(const Config& config, const policy::PolicyDoc& policy,
                       const fitcore::FitOptions& fit_options = {});

// One run per archetype on the simulated backend, archetype overriding the
// config. Parallel runs use independent simulators and produce the same
// report as sequential ones.
BatchReport run_batch(const Config& config, const policy::PolicyDoc& policy,
                      const std::vector<std::string>& archetypes, bool parallel = false,
                      const fitcore::FitOptions& fit_options = {});

struct SimulateOptions {
  std::string archetype = "generic";
  double cap = 1.0;
  int epochs = 1;
  std::optional<std::uint64_t> seed;  // epoch i uses seed + i
  double sampler_period_s = 0.1;
  double idle_window_s = 10.0;
  bool allow_unstable = false;  // permit caps under the actuator floor
  std::string catalog_path;     // bundled catalog when empty
  std::string out_dir;          // epoch_<i>.csv traces when set
};

struct EpochRow {
  int epoch = 0;
  double cap = 1.0;
  double energy_j = 0.0;  // gross
  double net_energy_j = 0.0;
  double duration_s = 0.0;
  std::uint64_t samples = 0;
  double mean_util = 0.0;
  std::string trace_path;
};

// Throws UnknownArchetype, or InvalidArgument for a cap below the floor
// without allow_unstable.
std::vector<EpochRow> simulate(const SimulateOptions& options);

// `epoch,cap,energy_j,net_energy_j,duration_s,samples,mean_util`
std::string epochs_csv(const std::vector<EpochRow>& rows);

}  // namespace frost::cli
