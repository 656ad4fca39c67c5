// deckwalk command line: run, compare, verify.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "deckwalk/metrics.hpp"
#include "deckwalk/report.hpp"
#include "deckwalk/scenario.hpp"
#include "deckwalk/trace_io.hpp"
#include "deckwalk/verify.hpp"

namespace fs = std::filesystem;
using namespace deckwalk;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDiverged = 3;

struct Common {
  std::string scenario_path;
  std::string out_dir;
  std::optional<int> case_id;
  std::optional<std::uint64_t> seed;
};

Scenario resolve_scenario(const Common& c) {
  Scenario s = c.scenario_path.empty() ? builtin_scenario(c.case_id.value_or(1))
                                       : load_scenario(c.scenario_path);
  if (c.case_id && !c.scenario_path.empty()) {
    s.sim.surface = builtin_case(*c.case_id);
    s.surface_label = fmt::format("case{}", *c.case_id);
  }
  if (c.seed) s.sim.seed = *c.seed;
  if (!c.out_dir.empty()) s.output_dir = c.out_dir;
  if (s.output_dir.empty()) s.output_dir = "deckwalk_out";
  return s;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open " + path.string() + " for writing");
  out << text;
}

std::string summary_text(const Scenario& s, const SimTrace& trace,
                         const std::optional<MetricsRecord>& m, const std::string& status) {
  std::string out;
  out += fmt::format("surface      {}\n", s.surface_label);
  out += fmt::format("controller   {}\n", to_string(s.sim.controller));
  out += fmt::format("status       {}\n", status);
  out += fmt::format("samples      {}\n", trace.samples.size());
  out += fmt::format("touchdowns   {}\n", trace.touchdowns.size());
  if (trace.long_steps > 0) {
    out += fmt::format("warning      {} step(s) longer than {} m\n", trace.long_steps,
                       kStepWarningThreshold);
  }
  for (const auto& w : trace.warnings) out += fmt::format("warning      {}\n", w);
  if (m) {
    out += fmt::format("RMSE         {:.6e} m\n", m->rmse);
    out += fmt::format("PEAK         {:.6e} m\n", m->peak);
    out += fmt::format("RMSE-PI      {:.6e} m\n", m->rmse_pi);
    out += fmt::format("PEAK-PI      {:.6e} m\n", m->peak_pi);
    out += fmt::format("TRQ          {:.6e} N m\n", m->trq);
    out += fmt::format("FIT          {:.6e} m/s\n", m->fit);
  }
  return out;
}

int cmd_run(const Common& common) {
  Scenario s;
  try {
    s = resolve_scenario(common);
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  const fs::path dir = s.output_dir;
  fs::create_directories(dir);

  SimTrace trace;
  std::string status = "ok";
  int code = 0;
  try {
    trace = run_scenario(s);
  } catch (const DivergenceError& e) {
    trace = e.partial_trace();
    status = std::string("diverged: ") + e.what();
    code = kExitDiverged;
  }
  write_trace_csv(dir / "trace.csv", trace);

  std::optional<MetricsRecord> metrics;
  if (code == 0) {
    try {
      metrics = compute_metrics(trace);
      std::ofstream out(dir / "metrics.csv");
      write_metrics_csv(out, *metrics);
    } catch (const InvalidInput& e) {
      status = std::string("metrics unavailable: ") + e.what();
    }
  }
  if (s.write_plots) write_plot_data(trace, dir / "plots", std::string(to_string(s.sim.controller)));
  const auto text = summary_text(s, trace, metrics, status);
  write_file(dir / "summary.txt", text);
  std::cout << text;
  if (code != 0) std::cerr << status << '\n';
  return code;
}

int cmd_compare(const Common& common, const std::vector<std::string>& names) {
  std::vector<Controller> controllers;
  try {
    for (const auto& n : names) {
      if (!n.empty()) controllers.push_back(parse_controller(n));
    }
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (controllers.empty()) {
    std::cerr << "config error: no controllers given\n";
    return kExitConfig;
  }
  Scenario base;
  try {
    base = resolve_scenario(common);
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  const fs::path dir = base.output_dir;
  fs::create_directories(dir);

  std::vector<ControllerRun> runs;
  for (auto c : controllers) {
    Scenario s = base;
    s.sim.controller = c;
    ControllerRun run{c, std::nullopt, {}};
    SimTrace trace;
    try {
      trace = run_scenario(s);
      run.trace = trace;
    } catch (const DivergenceError& e) {
      trace = e.partial_trace();
      run.note = std::string("diverged: ") + e.what();
    }
    write_trace_csv(dir / fmt::format("trace_{}.csv", to_string(c)), trace);
    if (s.write_plots) write_plot_data(trace, dir / "plots", std::string(to_string(c)));
    runs.push_back(std::move(run));
  }
  const auto report = compare_report(runs, base.surface_label, base.gait.torque_limit);
  const auto table = format_table(report);
  write_file(dir / "comparison.txt", table);
  std::ofstream csv(dir / "comparison.csv");
  write_report_csv(csv, report);
  std::cout << table;
  return 0;
}

int cmd_verify(bool json, std::optional<double> dare_tolerance) {
  VerifyOptions options;
  if (dare_tolerance) options.dare.tolerance = *dare_tolerance;
  const auto results = run_verification(options);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  if (json) {
    nlohmann::json doc;
    doc["passed"] = all;
    for (const auto& r : results) {
      doc["properties"].push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    std::cout << doc.dump(2) << '\n';
  } else {
    for (const auto& r : results) {
      std::cout << fmt::format("{} {:<26} {}\n", r.passed ? "PASS" : "FAIL", r.name, r.detail);
    }
    std::cout << (all ? "all properties pass\n" : "some properties fail\n");
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive ankle-torque and LQR footstep control on a moving deck"};
  app.require_subcommand(1);

  Common run_opts;
  auto* run = app.add_subcommand("run", "Simulate one scenario and write trace, metrics and summary");
  run->add_option("--scenario", run_opts.scenario_path, "YAML scenario file")->check(CLI::ExistingFile);
  run->add_option("--case", run_opts.case_id, "Built-in deck case (1, 2 or 3)")->check(CLI::Range(1, 3));
  run->add_option("--out", run_opts.out_dir, "Output directory");
  run->add_option("--seed", run_opts.seed, "Seed for measurement noise");

  Common cmp_opts;
  std::vector<std::string> controllers{"pd_ff", "adaptive"};
  auto* compare = app.add_subcommand("compare", "Run several controllers on one case and tabulate");
  compare->add_option("--scenario", cmp_opts.scenario_path, "YAML scenario file")
      ->check(CLI::ExistingFile);
  compare->add_option("--case", cmp_opts.case_id, "Built-in deck case (1, 2 or 3)")
      ->check(CLI::Range(1, 3));
  compare->add_option("--controllers", controllers, "Comma-separated controllers")
      ->delimiter(',')
      ->expected(0, -1);
  compare->add_option("--out", cmp_opts.out_dir, "Output directory");
  compare->add_option("--seed", cmp_opts.seed, "Seed for measurement noise");

  bool json = false;
  std::optional<double> dare_tolerance;
  auto* verify = app.add_subcommand("verify", "Run the property battery");
  verify->add_flag("--json", json, "Machine-readable output");
  verify->add_option("--dare-tolerance", dare_tolerance,
                     "Override the Riccati iteration tolerance (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_opts);
    if (*compare) return cmd_compare(cmp_opts, controllers);
    if (*verify) return cmd_verify(json, dare_tolerance);
  } catch (const DivergenceError& e) {
    std::cerr << "diverged: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
