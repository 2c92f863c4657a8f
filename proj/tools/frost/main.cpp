// frost: probe power caps, fit the ED^mP curve, pick a cap, report.
//
// Exit codes: 0 ok, 2 usage, 3 backend/runtime failure, 4 fit or decision
// failure. Failures also print one JSON object on stderr.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "frost/cli/config.hpp"
#include "frost/cli/overhead.hpp"
#include "frost/cli/pipeline.hpp"
#include "frost/cli/render.hpp"
#include "frost/cli/report.hpp"
#include "frost/energy/trace_csv.hpp"
#include "frost/error.hpp"
#include "frost/policy/policy_io.hpp"
#include "frost/profiler/probes_csv.hpp"
#include "frost/simdev/catalog.hpp"

namespace {

using namespace frost;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBackend = 3;
constexpr int kExitFit = 4;

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::usage:
      return kExitUsage;
    case ErrorCategory::backend:
      return kExitBackend;
    case ErrorCategory::fit:
      return kExitFit;
  }
  return kExitBackend;
}

int fail(std::string_view category, std::string_view kind, std::string_view message, int code) {
  nlohmann::json err = {{"error", {{"category", category}, {"kind", kind}, {"message", message}}},
                        {"exit_code", code}};
  std::cerr << err.dump() << std::endl;
  return code;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    cli::write_text_file(path, text);
  }
}

std::optional<std::string> opt_path(const std::string& s) {
  return s.empty() ? std::nullopt : std::optional<std::string>(s);
}

policy::PolicyDoc policy_or_default(const std::string& path) {
  return path.empty() ? policy::PolicyDoc{} : policy::load_policy(path);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct Args {
  std::string config, policy, out, trace_out, probes, in, format = "summary";
  std::string archetype, archetypes, out_dir, catalog;
  double window = 0.0, cap = 1.0, period = 0.1, work_s = 0.25;
  int m = -1, epochs = 1, reps = 10;
  std::uint64_t seed = 0;
  bool batch = false, parallel = false, allow_unstable = false, off = false, seed_set = false;
};

int cmd_idle(const Args& a) {
  const auto config = cli::config_or_default(opt_path(a.config));
  const auto device = cli::make_device(config);
  const double window = a.window > 0.0 ? a.window : config.idle_window_s;
  const auto idle = cli::measure_idle_traced(*device.backend, window, config.sampling_period_s);
  if (!a.trace_out.empty()) energy::save_trace_csv(a.trace_out, idle.trace);
  emit(cli::to_json(idle.baseline), a.out);
  return kExitOk;
}

int cmd_probe(const Args& a) {
  const auto config = cli::config_or_default(opt_path(a.config));
  const auto policy = policy_or_default(a.policy);
  const auto device = cli::make_device(config);
  if (!device.workload) throw ConfigError("probing needs a workload driver");
  const auto idle =
      cli::measure_idle_traced(*device.backend, config.idle_window_s, config.sampling_period_s);
  hal::CapActuator actuator(*device.backend, config.actuator_min, config.actuator_max);
  profiler::SweepOptions options;
  options.sampler_period_s = config.sampling_period_s;
  const auto sweep =
      profiler::run_sweep(actuator, *device.workload, policy.schedule, idle.baseline, options);
  if (!a.trace_out.empty()) energy::save_trace_csv(a.trace_out, sweep.trace);
  std::ostringstream csv;
  profiler::write_probes_csv(csv, sweep.points);
  emit(csv.str(), a.out);
  return kExitOk;
}

fitcore::FitOptions fit_options(const Args& a) {
  fitcore::FitOptions o;
  if (a.seed_set) o.seed = a.seed;
  return o;
}

int cmd_fit(const Args& a) {
  const auto points = profiler::load_probes_csv(a.probes);
  const int m = a.m >= 0 ? a.m : 1;
  if (m > 3) throw InvalidArgument("m must be one of 0, 1, 2, 3");
  std::vector<fitcore::FitPoint> xy;
  double lo = 1.0, hi = 0.0;
  for (const auto& p : points) {
    xy.push_back({p.limit_fraction, policy::score(p, m)});
    lo = std::min(lo, p.limit_fraction);
    hi = std::max(hi, p.limit_fraction);
  }
  const auto fit = fitcore::fit_curve(xy, fit_options(a));
  emit(cli::to_json(fit, lo, hi), a.out);
  if (!fit.converged) {
    return fail("fit", "NotConverged", "relative error is not below 5%", kExitFit);
  }
  return kExitOk;
}

int cmd_decide(const Args& a) {
  const auto points = profiler::load_probes_csv(a.probes);
  auto policy = policy_or_default(a.policy);
  if (a.m >= 0) policy.m = a.m;
  const auto decision = policy::decide(points, policy, fit_options(a));
  emit(cli::to_json(decision, policy), a.out);
  return kExitOk;
}

int cmd_run(const Args& a) {
  const auto config = cli::config_or_default(opt_path(a.config));
  const auto policy = policy_or_default(a.policy);
  if (a.batch) {
    auto names = split_list(a.archetypes);
    if (names.empty()) names = simdev::ArchetypeCatalog::bundled().default_batch();
    const auto batch = cli::run_batch(config, policy, names, a.parallel, fit_options(a));
    emit(cli::to_json(batch), a.out);
  } else {
    const auto report = cli::run_pipeline(config, policy, fit_options(a));
    emit(cli::to_json(report), a.out);
  }
  return kExitOk;
}

int cmd_simulate(const Args& a) {
  cli::SimulateOptions o;
  o.archetype = a.archetype;
  o.cap = a.cap;
  o.epochs = a.epochs;
  if (a.seed_set) o.seed = a.seed;
  o.sampler_period_s = a.period;
  o.allow_unstable = a.allow_unstable;
  o.catalog_path = a.catalog;
  o.out_dir = a.out_dir;
  emit(cli::epochs_csv(cli::simulate(o)), a.out);
  return kExitOk;
}

int cmd_overhead(const Args& a) {
  cli::OverheadOptions o;
  o.period_s = a.period;
  o.reps = a.reps;
  o.work_s = a.work_s;
  o.sampler_on = !a.off;
  if (!a.archetype.empty()) o.archetype = a.archetype;
  hal::Device device;
  const auto config = cli::config_or_default(opt_path(a.config));
  if (config.backend_kind != "simulated") device = cli::make_device(config);
  emit(cli::to_json(cli::measure_overhead(o, device.backend.get())), a.out);
  return kExitOk;
}

int cmd_report(const Args& a) {
  const auto format = cli::parse_format(a.format);
  emit(cli::render(cli::read_text_file(a.in), format), a.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frost: power-cap profiling and ED^mP decisions"};
  app.require_subcommand(1);
  Args a;

  auto config_opt = [&](CLI::App* sub) {
    sub->add_option("-c,--config", a.config, "INI config (default: $FROST_CONFIG, else simulator)");
  };
  auto out_opt = [&](CLI::App* sub) { sub->add_option("-o,--out", a.out, "output file (stdout)"); };
  auto seed_opt = [&](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t s) {
          a.seed = s;
          a.seed_set = true;
        }, "RNG seed");
  };

  auto* idle = app.add_subcommand("idle", "measure the idle power baseline");
  config_opt(idle);
  out_opt(idle);
  idle->add_option("--window", a.window, "idle window in seconds (config default)");
  idle->add_option("--trace-out", a.trace_out, "write the idle trace CSV");

  auto* probe = app.add_subcommand("probe", "run the probe sweep and write probe points CSV");
  config_opt(probe);
  out_opt(probe);
  probe->add_option("-p,--policy", a.policy, "policy JSON (default policy)");
  probe->add_option("--trace-out", a.trace_out, "write the sweep trace CSV");

  auto* fit = app.add_subcommand("fit", "fit the score curve to probe points");
  out_opt(fit);
  seed_opt(fit);
  fit->add_option("--probes", a.probes, "probe points CSV")->required();
  fit->add_option("-m", a.m, "delay exponent (1)")->check(CLI::Range(0, 3));

  auto* decide = app.add_subcommand("decide", "choose a cap from probe points");
  out_opt(decide);
  seed_opt(decide);
  decide->add_option("--probes", a.probes, "probe points CSV")->required();
  decide->add_option("-p,--policy", a.policy, "policy JSON (default policy)");
  decide->add_option("-m", a.m, "override the policy's delay exponent")->check(CLI::Range(0, 3));

  auto* run = app.add_subcommand("run", "idle, probe, decide, run the main phase, report");
  config_opt(run);
  out_opt(run);
  seed_opt(run);
  run->add_option("-p,--policy", a.policy, "policy JSON (default policy)");
  run->add_flag("--batch", a.batch, "run every archetype of a batch on the simulator");
  run->add_option("--archetypes", a.archetypes, "comma-separated batch (catalog default)");
  run->add_flag("--parallel", a.parallel, "run batch members concurrently");

  auto* sim = app.add_subcommand("simulate", "run simulated epochs at a fixed cap");
  out_opt(sim);
  seed_opt(sim);
  sim->add_option("--archetype", a.archetype, "workload archetype")->required();
  sim->add_option("--cap", a.cap, "cap as a fraction of TDP (1.0)");
  sim->add_option("--epochs", a.epochs, "number of epochs (1)");
  sim->add_option("--out-dir", a.out_dir, "directory for per-epoch trace CSVs");
  sim->add_option("--period", a.period, "sampling period in seconds (0.1)");
  sim->add_option("--catalog", a.catalog, "archetype catalog INI (bundled)");
  sim->add_flag("--allow-unstable", a.allow_unstable, "allow caps below 0.3");

  auto* overhead = app.add_subcommand("overhead", "measure sampler wall-clock overhead");
  config_opt(overhead);
  out_opt(overhead);
  overhead->add_option("--period", a.period, "sampling period in seconds (0.1)");
  overhead->add_option("--reps", a.reps, "paired repetitions (10)");
  overhead->add_option("--work-s", a.work_s, "length of one unsampled run (0.25)");
  overhead->add_option("--archetype", a.archetype, "simulated sensor archetype (generic)");
  overhead->add_flag("--off", a.off, "compare sampler-off against sampler-off");

  auto* report = app.add_subcommand("report", "render a run or batch report as CSV");
  out_opt(report);
  report->add_option("--in", a.in, "report JSON")->required();
  report->add_option("-f,--format", a.format, "fig2, fig4, fig5, fig6 or summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fail("usage", "ParseError", e.what(), kExitUsage);
  }

  try {
    if (*idle) return cmd_idle(a);
    if (*probe) return cmd_probe(a);
    if (*fit) return cmd_fit(a);
    if (*decide) return cmd_decide(a);
    if (*run) return cmd_run(a);
    if (*sim) return cmd_simulate(a);
    if (*overhead) return cmd_overhead(a);
    if (*report) return cmd_report(a);
  } catch (const Error& e) {
    return fail(to_string(e.category()), e.kind(), e.what(), exit_code(e.category()));
  } catch (const std::exception& e) {
    return fail("backend", "RuntimeError", e.what(), kExitBackend);
  }
  return kExitUsage;
}
