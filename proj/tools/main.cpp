#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "abrasim/config.hpp"
#include "abrasim/experiment.hpp"
#include "abrasim/io.hpp"
#include "abrasim/metrics.hpp"
#include "abrasim/sim.hpp"

namespace {

using namespace abrasim;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string variant;
  bool trace = false;
};

void apply_overrides(Scenario& sc, const CommonOpts& o) {
  if (o.seed_set) sc.config.seed = o.seed;
  if (!o.variant.empty()) {
    if (!cc::variant_from_name(o.variant, &sc.config.cc.variant))
      throw ConfigError("unknown variant '" + o.variant + "' (reno|newreno|abra-newreno)");
  }
  sc.config.trace = o.trace;
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output dir '" + dir + "': " + ec.message());
}

int cmd_run(const CommonOpts& o) {
  ParsedConfig parsed = parse_config_file(o.config_path);
  Scenario sc = parsed.scenario;
  apply_overrides(sc, o);
  validate(sc.config);

  Simulation sim(sc.config);
  RunMetrics m = sim.run();

  ensure_out_dir(o.out_dir);
  std::string csv_path = o.out_dir + "/metrics.csv";
  std::vector<std::pair<std::string, std::string>> outputs{
      {csv_path, csv_header() + csv_row(sc, m)}};
  std::string trace_path;
  if (o.trace) {
    trace_path = o.out_dir + "/trace-" + scenario_id(sc) + ".txt";
    outputs.emplace_back(trace_path, sim.trace_text());
  }
  atomic_write_files(outputs);
  if (o.trace) std::printf("wrote %s\n", trace_path.c_str());
  auto tput = throughput(m);
  auto pdr = packet_delivery_ratio(m);
  std::printf("wrote %s\n", csv_path.c_str());
  std::printf("%s seed=%llu: throughput=%s B/s pdr=%s timeouts=%lld retransmits=%lld\n",
              cc::variant_name(sc.config.cc.variant),
              static_cast<unsigned long long>(sc.config.seed),
              tput ? std::to_string(*tput).c_str() : "NA",
              pdr ? std::to_string(*pdr).c_str() : "NA",
              static_cast<long long>(m.timeouts),
              static_cast<long long>(m.segments_retransmitted));
  return 0;
}

int cmd_sweep(const CommonOpts& o, int jobs) {
  ParsedConfig parsed = parse_config_file(o.config_path);
  if (!parsed.sweep)
    throw ConfigError(o.config_path + ": sweep command needs a [sweep] section");
  SweepSpec spec = *parsed.sweep;
  apply_overrides(spec.base, o);
  if (o.seed_set) spec.seeds = {o.seed};
  if (!o.variant.empty()) spec.variants = {spec.base.config.cc.variant};

  std::vector<Scenario> scenarios = build_sweep(spec);
  std::vector<RunResult> results = run_sweep(scenarios, jobs);

  std::string csv = csv_header();
  int failures = 0;
  for (const RunResult& r : results) {
    if (r.metrics) {
      csv += csv_row(r.scenario, *r.metrics);
    } else {
      ++failures;
      std::fprintf(stderr, "run %s failed: %s\n", scenario_id(r.scenario).c_str(),
                   r.error.c_str());
    }
  }
  if (failures > 0) {
    // Failed invocations leave existing outputs untouched.
    std::fprintf(stderr, "%d of %zu runs failed; no output written\n", failures,
                 results.size());
    return 1;
  }
  ensure_out_dir(o.out_dir);
  std::string csv_path = o.out_dir + "/metrics.csv";
  std::vector<std::pair<std::string, std::string>> outputs{{csv_path, csv}};
  if (o.trace) {
    for (const RunResult& r : results)
      outputs.emplace_back(o.out_dir + "/trace-" + scenario_id(r.scenario) + ".txt",
                           r.trace);
  }
  atomic_write_files(outputs);
  std::printf("wrote %s (%zu rows)\n", csv_path.c_str(), results.size());
  return 0;
}

int cmd_trace_check(const CommonOpts& o, const std::string& golden_path) {
  ParsedConfig parsed = parse_config_file(o.config_path);
  Scenario sc = parsed.scenario;
  apply_overrides(sc, o);
  sc.config.trace = true;

  Simulation first(sc.config);
  RunMetrics m1 = first.run();
  Simulation second(sc.config);
  RunMetrics m2 = second.run();

  if (first.trace_text() != second.trace_text() ||
      csv_row(sc, m1) != csv_row(sc, m2)) {
    std::fprintf(stderr, "trace-check FAILED: repeated run diverged\n");
    return 1;
  }
  if (!golden_path.empty()) {
    std::string golden = read_file(golden_path);
    if (first.trace_text() != golden) {
      std::fprintf(stderr, "trace-check FAILED: trace differs from %s\n",
                   golden_path.c_str());
      return 1;
    }
  }
  std::printf("trace-check OK: %s is deterministic%s\n", scenario_id(sc).c_str(),
              golden_path.empty() ? "" : " and matches the golden trace");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic simulator of TCP bulk transfer over a failure-prone path"};
  app.require_subcommand(0, 1);

  bool print_defaults = false;
  app.add_flag("--print-defaults", print_defaults,
               "Print every tunable with its default value and exit");

  CommonOpts run_o, sweep_o, check_o;
  int jobs = 1;
  std::string golden_path;

  auto add_common = [](CLI::App* cmd, CommonOpts& o, bool with_trace_flag = true) {
    cmd->add_option("--config", o.config_path, "Scenario file")->required();
    cmd->add_option("--out", o.out_dir, "Output directory (default .)");
    cmd->add_option("--seed", o.seed, "Override the scenario seed")
        ->each([&o](const std::string&) { o.seed_set = true; });
    cmd->add_option("--variant", o.variant, "Override the TCP variant");
    if (with_trace_flag) cmd->add_flag("--trace", o.trace, "Write per-run event traces");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "Run one scenario");
  add_common(run_cmd, run_o);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run the sweep defined in the config");
  add_common(sweep_cmd, sweep_o);
  sweep_cmd->add_option("--jobs", jobs, "Parallel runs (results stay in input order)");

  CLI::App* check_cmd =
      app.add_subcommand("trace-check", "Re-run a scenario and verify determinism");
  add_common(check_cmd, check_o, false);
  check_cmd->add_option("--golden", golden_path, "Also compare against this trace file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (print_defaults) {
      std::fputs(abrasim::default_config_text().c_str(), stdout);
      return 0;
    }
    if (run_cmd->parsed()) return cmd_run(run_o);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_o, jobs);
    if (check_cmd->parsed()) return cmd_trace_check(check_o, golden_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }

  std::fputs(app.help().c_str(), stderr);
  return 2;
}
