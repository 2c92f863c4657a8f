#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "frost/cli/config.hpp"
#include "frost/cli/overhead.hpp"
#include "frost/cli/pipeline.hpp"
#include "frost/cli/render.hpp"
#include "frost/cli/report.hpp"
#include "frost/cli/stats.hpp"
#include "frost/energy/accounting.hpp"
#include "frost/error.hpp"
#include "frost/simdev/catalog.hpp"
#include "frost/simdev/sim_backend.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace frost;
using namespace frost::cli;

namespace {

Config sim_config(const std::string& archetype, int seed = 1) {
  return parse_config("[backend]\nkind = simulated\narchetype = " + archetype +
                      "\nseed = " + std::to_string(seed) + "\n");
}

// Fresh directory under the system temp dir, removed with the object.
struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("frost_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string without_timestamp(std::string json) {
  const auto at = json.find("\"generated_at\"");
  if (at == std::string::npos) return json;
  const auto end = json.find('\n', at);
  return json.erase(at, end - at);
}

int run_frost(const std::string& args, std::string* err = nullptr) {
  TempDir tmp;
  const std::string err_path = tmp.file("stderr.txt");
  const std::string cmd =
      std::string(FROST_BIN) + " " + args + " > " + tmp.file("stdout.txt") + " 2> " + err_path;
  const int status = std::system(cmd.c_str());
  if (err) *err = read_text_file(err_path);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Pearson, PerfectLines) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> up, down;
  for (double v : x) up.push_back(2 * v + 1), down.push_back(-v);
  EXPECT_NEAR(pearson_r(x, up), 1.0, 1e-15);
  EXPECT_NEAR(pearson_r(x, down), -1.0, 1e-15);
}

TEST(Pearson, IndependentNoiseIsUncorrelated) {
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> x(1000), y(1000);
  for (auto& v : x) v = n(rng);
  for (auto& v : y) v = n(rng);
  EXPECT_LT(std::abs(pearson_r(x, y)), 0.1);
}

TEST(Pearson, MatchesTextbookAndIsSymmetricAndAffineInvariant) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(50), y(50), xa(50);
  for (std::size_t i = 0; i < 50; ++i) {
    x[i] = u(rng);
    y[i] = x[i] + 0.5 * u(rng);
    xa[i] = 3.0 * x[i] - 7.0;
  }
  const double r = pearson_r(x, y);
  EXPECT_NEAR(r, oracle::pearson(x, y), 1e-12);
  EXPECT_NEAR(pearson_r(y, x), r, 1e-15);
  EXPECT_NEAR(pearson_r(xa, y), r, 1e-12);
}

TEST(Pearson, RejectsDegenerateInput) {
  const std::vector<double> x{1, 2, 3}, flat{4, 4, 4}, short_{1};
  EXPECT_THROW(pearson_r(x, flat), DegenerateVariance);
  EXPECT_THROW(pearson_r(short_, short_), InvalidArgument);
  EXPECT_THROW(pearson_r(x, short_), InvalidArgument);
}

TEST(Median, OddAndEven) {
  const std::vector<double> odd{3, 1, 2}, even{4, 1, 3, 2};
  EXPECT_EQ(median(odd), 2.0);
  EXPECT_EQ(median(even), 2.5);
}

TEST(Config, ParsesEverySection) {
  const Config c = parse_config(
      "[backend]\nkind = command\n[command]\nset_limit_cmd = true\n"
      "[dimm]\nn_dimm = 2\n[sampling]\nperiod_s = 0.5\n[idle]\nwindow_s = 3\n"
      "[actuator]\nmin_fraction = 0.4\nmax_fraction = 0.9\n"
      "[run]\nmain_samples = 500\nreference = yes\n");
  EXPECT_EQ(c.backend_kind, "command");
  EXPECT_EQ(c.backend.at("set_limit_cmd"), "true");
  EXPECT_EQ(c.backend.at("n_dimm"), "2");
  EXPECT_EQ(c.backend.count("kind"), 0u);
  EXPECT_EQ(c.sampling_period_s, 0.5);
  EXPECT_EQ(c.idle_window_s, 3.0);
  EXPECT_EQ(c.actuator_min, 0.4);
  EXPECT_EQ(c.actuator_max, 0.9);
  EXPECT_EQ(c.main_samples, 500u);
  EXPECT_TRUE(c.run_reference());
}

TEST(Config, ReferenceDefaultsFollowTheBackend) {
  EXPECT_TRUE(parse_config("[backend]\nkind = simulated\n").run_reference());
  EXPECT_FALSE(parse_config("[backend]\nkind = command\n").run_reference());
}

TEST(Config, RejectsBadValues) {
  EXPECT_THROW(parse_config("[sampling]\nperiod_s = fast\n"), ConfigError);
  EXPECT_THROW(parse_config("[sampling]\nperiod_s = 0\n"), ConfigError);
  EXPECT_THROW(parse_config("[actuator]\nmin_fraction = 0.9\nmax_fraction = 0.5\n"), ConfigError);
  EXPECT_THROW(parse_config("[run]\nreference = maybe\n"), ConfigError);
  EXPECT_THROW(parse_config("no section = [\n[[["), ConfigError);
}

TEST(Config, EnvironmentVariableSuppliesThePath) {
  TempDir tmp;
  const std::string path = tmp.file("env.ini");
  write_text_file(path, "[backend]\nkind = simulated\narchetype = vgg-like\n");
  ::setenv(kConfigEnvVar, path.c_str(), 1);
  EXPECT_EQ(resolve_config_path(std::nullopt), path);
  EXPECT_EQ(config_or_default(std::nullopt).backend.at("archetype"), "vgg-like");
  EXPECT_EQ(resolve_config_path(std::string("explicit.ini")), "explicit.ini");
  ::unsetenv(kConfigEnvVar);
  EXPECT_FALSE(resolve_config_path(std::nullopt));
  EXPECT_EQ(config_or_default(std::nullopt).backend_kind, "simulated");
}

TEST(Pipeline, MobilenetRunChoosesSixtyPercent) {
  const RunReport r = run_pipeline(sim_config("mobilenet-like"), policy::PolicyDoc{});
  EXPECT_NEAR(r.decision.chosen_limit, 0.60, 0.05);
  EXPECT_EQ(r.probes.size(), 8u);
  EXPECT_EQ(r.exponents.size(), 4u);
  ASSERT_TRUE(r.tradeoff);
  EXPECT_GT(r.tradeoff->energy_saving_pct, 0.0);
}

TEST(Pipeline, EvidenceEqualsTheReportedProbes) {
  const RunReport r = run_pipeline(sim_config("densenet-like"), policy::PolicyDoc{});
  ASSERT_EQ(r.decision.probe_points.size(), r.probes.size());
  for (std::size_t i = 0; i < r.probes.size(); ++i) {
    EXPECT_EQ(r.decision.probe_points[i].energy_j, r.probes[i].energy_j);
  }
}

TEST(Pipeline, ProbeTermIsTheSumOfProbeEnergies) {
  const RunReport r = run_pipeline(sim_config("resnet-like"), policy::PolicyDoc{});
  double sum = 0.0;
  for (const auto& p : r.probes) sum += p.energy_j;
  EXPECT_NEAR(r.account.probe_energy_j, sum, 1e-9 * sum);
  EXPECT_NEAR(r.account.net_j, r.account.probe_energy_j + r.account.main_energy_j, 1e-9 * sum);
}

TEST(Pipeline, SameSeedGivesTheSameReport) {
  const policy::PolicyDoc p;
  const std::string a = to_json(run_pipeline(sim_config("vgg-like", 3), p));
  const std::string b = to_json(run_pipeline(sim_config("vgg-like", 3), p));
  EXPECT_EQ(without_timestamp(a), without_timestamp(b));
}

TEST(Pipeline, RestoresTheCapWhenAStageFails) {
  const Config cfg = sim_config("generic");
  const simdev::Archetype a = simdev::archetype("generic");
  // Start from the same cap as the failing runs so the final restore counts.
  auto clean = simdev::make_simulated_device(a.device, a.workload);
  clean.backend->apply_limit(0.8);
  run_pipeline(clean.as_device(), cfg, policy::PolicyDoc{});
  const int calls = clean.backend->actuation_calls() - 1;
  ASSERT_GT(calls, 8);

  // Fail each actuation of a run in turn.
  int thrown = 0;
  for (int fail_on = 1; fail_on <= calls; ++fail_on) {
    auto sim = simdev::make_simulated_device(a.device, a.workload);
    sim.backend->apply_limit(0.8);
    sim.backend->fail_actuation_on_call(fail_on);
    try {
      run_pipeline(sim.as_device(), cfg, policy::PolicyDoc{});
    } catch (const ActuationFailed&) {
      ++thrown;
    }
    EXPECT_DOUBLE_EQ(sim.backend->current_limit(), 0.8) << fail_on;
  }
  // Every probe and phase cap is checked; a failed restore is retried.
  EXPECT_GE(thrown, 9);
}

TEST(Pipeline, RestoresTheCapWhenSensorsFail) {
  const simdev::Archetype a = simdev::archetype("generic");
  auto sim = simdev::make_simulated_device(a.device, a.workload);
  sim.backend->apply_limit(0.7);
  sim.backend->fail_reads(true);
  EXPECT_THROW(run_pipeline(sim.as_device(), sim_config("generic"), policy::PolicyDoc{}),
               BackendUnavailable);
  EXPECT_DOUBLE_EQ(sim.backend->current_limit(), 0.7);
}

TEST(Pipeline, RestoresTheCapAfterSuccess) {
  const simdev::Archetype a = simdev::archetype("generic");
  auto sim = simdev::make_simulated_device(a.device, a.workload);
  sim.backend->apply_limit(0.9);
  run_pipeline(sim.as_device(), sim_config("generic"), policy::PolicyDoc{});
  EXPECT_DOUBLE_EQ(sim.backend->current_limit(), 0.9);
}

TEST(Report, RoundTripsAndReintegrates) {
  const RunReport r = run_pipeline(sim_config("efficientnet-like"), policy::PolicyDoc{});
  const RunReport back = parse_run_report(to_json(r));
  EXPECT_EQ(report_kind(to_json(r)), "run");
  ASSERT_EQ(back.probes.size(), r.probes.size());
  EXPECT_EQ(back.sweep_trace.size(), r.sweep_trace.size());
  EXPECT_EQ(back.decision.chosen_limit, r.decision.chosen_limit);

  for (std::size_t i = 0; i < back.probes.size(); ++i) {
    const auto& w = back.windows[i];
    const double e = energy::net_energy_window(back.sweep_trace, back.idle, w.t_measure_begin,
                                               w.t_measure_end)
                         .total_j;
    EXPECT_NEAR(e / r.probes[i].energy_j, 1.0, 1e-9) << i;
  }
  const double main_e = energy::net_energy(back.main.trace, back.idle).total_j;
  EXPECT_NEAR(main_e / r.main.net.total_j, 1.0, 1e-9);
  const double idle_w = energy::idle_from_trace(back.idle_trace).total();
  EXPECT_NEAR(idle_w / r.idle.total(), 1.0, 1e-9);
}

TEST(Report, UnknownDocumentsAreRejected) {
  EXPECT_THROW(report_kind(R"({"kind": "other"})"), UnknownFormat);
  EXPECT_THROW(parse_run_report("[1, 2"), ConfigError);
}

TEST(Render, FormatsHaveTheirHeaders) {
  const std::string doc = to_json(run_pipeline(sim_config("mobilenet-like"), policy::PolicyDoc{}));
  const std::string fig4 = render(doc, RenderFormat::fig4);
  EXPECT_EQ(fig4.substr(0, fig4.find('\n')),
            "workload,limit,energy_j,duration_s,energy_per_sample_j,delay_per_sample_s,score,"
            "fitted_score");
  EXPECT_EQ(std::count(fig4.begin(), fig4.end(), '\n'), 9);
  const std::string fig5 = render(doc, RenderFormat::fig5);
  EXPECT_EQ(std::count(fig5.begin(), fig5.end(), '\n'), 5);
  const std::string fig2 = render(doc, RenderFormat::fig2);
  EXPECT_EQ(fig2.rfind("workload,phase,limit,energy_j,duration_s,mean_power_w,utilization", 0), 0u);
  const std::string summary = render(doc, RenderFormat::summary);
  EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 1);
  EXPECT_NE(summary.find("saving"), std::string::npos);
  EXPECT_THROW(parse_format("fig9"), UnknownFormat);
}

TEST(Render, BatchTradeoffHasOneRowPerWorkloadPlusMean) {
  const std::vector<std::string> names{"mobilenet-like", "vgg-like", "lenet-like"};
  const BatchReport b = run_batch(sim_config("generic"), policy::PolicyDoc{}, names);
  const std::string fig6 = render(to_json(b), RenderFormat::fig6);
  EXPECT_EQ(fig6.substr(0, fig6.find('\n')),
            "workload,chosen_limit,energy_saving_pct,time_increase_pct");
  EXPECT_EQ(std::count(fig6.begin(), fig6.end(), '\n'), 5);
  EXPECT_NE(fig6.find("\nmean,"), std::string::npos);
  double mean = 0.0;
  for (const auto& r : b.runs) mean += r.tradeoff->energy_saving_pct / 3.0;
  EXPECT_NEAR(b.mean_energy_saving_pct, mean, 1e-9);
}

TEST(Batch, ParallelMatchesSequential) {
  const std::vector<std::string> names{"dpn-like", "regnet-like"};
  const BatchReport seq = run_batch(sim_config("generic"), policy::PolicyDoc{}, names, false);
  const BatchReport par = run_batch(sim_config("generic"), policy::PolicyDoc{}, names, true);
  for (std::size_t i = 0; i < names.size(); ++i) {
    EXPECT_EQ(without_timestamp(to_json(seq.runs[i])), without_timestamp(to_json(par.runs[i])));
  }
}

TEST(Simulate, LenetEnergyBarelyMovesWithTheCap) {
  std::vector<double> energy;
  for (double cap = 0.3; cap <= 1.0001; cap += 0.1) {
    SimulateOptions o;
    o.archetype = "lenet-like";
    o.cap = cap;
    energy.push_back(simulate(o).front().net_energy_j);
  }
  const auto [lo, hi] = std::minmax_element(energy.begin(), energy.end());
  EXPECT_LT(*hi / *lo - 1.0, 0.03);
}

TEST(Simulate, ThreeEpochsWriteThreeTraces) {
  TempDir tmp;
  SimulateOptions o;
  o.epochs = 3;
  o.out_dir = tmp.path.string();
  const auto rows = simulate(o);
  ASSERT_EQ(rows.size(), 3u);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(tmp.path)) files += entry.path().extension() == ".csv";
  EXPECT_EQ(files, 3);
  for (const auto& row : rows) EXPECT_TRUE(fs::exists(row.trace_path));
  const std::string csv = epochs_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "epoch,cap,energy_j,net_energy_j,duration_s,samples,mean_util");
}

TEST(Simulate, GuardsUnstableCaps) {
  SimulateOptions o;
  o.cap = 0.2;
  EXPECT_THROW(simulate(o), InvalidArgument);
  o.allow_unstable = true;
  EXPECT_NO_THROW(simulate(o));
  o.archetype = "nope";
  EXPECT_THROW(simulate(o), UnknownArchetype);
}

TEST(Overhead, OffAgainstOffIsNearZero) {
  OverheadOptions o;
  o.sampler_on = false;
  o.reps = 5;
  o.work_s = 0.05;
  const OverheadReport r = measure_overhead(o);
  EXPECT_EQ(r.samples_collected, 0u);
  EXPECT_LT(std::abs(r.overhead_pct), 5.0);
}

TEST(Overhead, KilohertzSamplingIsReported) {
  OverheadOptions o;
  o.period_s = 0.001;
  o.reps = 3;
  o.work_s = 0.05;
  const OverheadReport r = measure_overhead(o);
  EXPECT_EQ(r.baseline_s.size(), 3u);
  EXPECT_EQ(r.measured_s.size(), 3u);
  EXPECT_GT(r.samples_collected, 0u);
  EXPECT_TRUE(std::isfinite(r.overhead_pct));
}

TEST(Binary, SuccessfulRunExitsZero) {
  TempDir tmp;
  write_text_file(tmp.file("c.ini"), "[backend]\nkind = simulated\narchetype = mobilenet-like\n");
  write_text_file(tmp.file("p.json"), "{\"m\": 1}");
  EXPECT_EQ(run_frost("run -c " + tmp.file("c.ini") + " -p " + tmp.file("p.json") + " -o " +
                      tmp.file("r.json")),
            0);
  const RunReport r = parse_run_report(read_text_file(tmp.file("r.json")));
  EXPECT_NEAR(r.decision.chosen_limit, 0.6, 0.05);
  EXPECT_EQ(run_frost("report --in " + tmp.file("r.json") + " -f fig4"), 0);
}

TEST(Binary, MissingPolicyIsAUsageError) {
  std::string err;
  EXPECT_EQ(run_frost("run -p /nonexistent/policy.json", &err), 2);
  EXPECT_NE(err.find("\"exit_code\":2"), std::string::npos) << err;
  EXPECT_NE(err.find("\"category\""), std::string::npos);
}

TEST(Binary, ExitCodesFollowTheTaxonomy) {
  EXPECT_EQ(run_frost("frobnicate"), 2);
  EXPECT_EQ(run_frost("simulate --archetype generic --cap 0.2"), 2);
  EXPECT_EQ(run_frost("simulate --archetype nope"), 2);
  TempDir tmp;
  write_text_file(tmp.file("bad.ini"),
                  "[backend]\nkind = command\nread_power_cmd.gpu = false\n"
                  "read_power_cmd.cpu = false\nset_limit_cmd = true\n");
  EXPECT_EQ(run_frost("idle -c " + tmp.file("bad.ini")), 3);

  // Alternating scores no curve follows: the fit step reports failure.
  std::ostringstream csv;
  csv << "limit,energy_j,duration_s,samples,energy_per_sample_j,throughput_sps\n";
  for (int i = 0; i < 8; ++i) {
    const double e = i % 2 ? 10000.0 : 1000.0;
    csv << 0.3 + 0.1 * i << "," << e << ",10,1000," << e / 1000 << ",100\n";
  }
  write_text_file(tmp.file("probes.csv"), csv.str());
  EXPECT_EQ(run_frost("fit --probes " + tmp.file("probes.csv")), 4);
  EXPECT_EQ(run_frost("decide --probes " + tmp.file("probes.csv")), 0);
}
