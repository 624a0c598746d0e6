// Command-line front end: single runs and multi-controller comparisons.
//
//   predsafe run --scenario s.json --controller predictor_tissf --out run.csv
//   predsafe compare --scenario s.json --controllers a b --out-dir results/
//
// Exit codes: 0 success, 1 configuration error, 2 runtime safety assertion.

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "predsafe/csv.hpp"
#include "predsafe/errors.hpp"
#include "predsafe/scenario.hpp"
#include "predsafe/sim.hpp"

namespace {

using predsafe::Scenario;
namespace csv = predsafe::csv;
namespace sim = predsafe::sim;

struct CommonOptions {
  std::string scenario;
  std::optional<double> dt;
  std::optional<double> t_end;
  bool no_assert = false;
};

void AddCommon(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--scenario", o.scenario,
                  "Scenario JSON file (built-in defaults when omitted)");
  cmd->add_option("--dt", o.dt, "Override the sample period [s]");
  cmd->add_option("--t-end", o.t_end, "Override the simulated horizon [s]");
  cmd->add_flag("--no-assert", o.no_assert,
                "Disable runtime barrier-inequality assertions");
}

Scenario LoadScenario(const CommonOptions& o) {
  Scenario s = o.scenario.empty() ? predsafe::parse_scenario("{}")
                                  : predsafe::load_scenario(o.scenario);
  if (o.dt) s.base.dt = *o.dt;
  if (o.t_end) s.base.t_end = *o.t_end;
  if (o.no_assert) s.base.assertions = false;
  for (const auto& w : s.base.truck.safe_design_warnings()) {
    std::cerr << "warning: " << w
              << " (delay-free safety of the nominal controller not guaranteed)\n";
  }
  return s;
}

void WriteFile(const std::filesystem::path& path,
               const std::vector<sim::StepRecord>& log) {
  std::ofstream out(path);
  if (!out) throw predsafe::ConfigError("cannot write " + path.string());
  csv::write_trajectory(out, log);
}

void PrintMetrics(const sim::Metrics& m, const std::string& prefix) {
  for (const auto& [key, value] : sim::metric_fields(m)) {
    std::cout << prefix << key << '=' << csv::format_double(value) << '\n';
  }
}

int CmdRun(const CommonOptions& o, const std::string& controller,
           const std::string& out_path) {
  const Scenario s = LoadScenario(o);
  const sim::SimResult result = sim::run(s.config_for(controller));
  WriteFile(out_path, result.log);
  PrintMetrics(result.metrics, "");
  return 0;
}

int CmdCompare(const CommonOptions& o, const std::vector<std::string>& names,
               const std::string& out_dir) {
  if (names.size() < 2) {
    throw predsafe::ConfigError("compare needs at least two controllers");
  }
  const Scenario s = LoadScenario(o);
  std::vector<sim::SimConfig> configs;
  for (const auto& n : names) {
    configs.push_back(s.config_for(n));
    configs.back().validate();
  }
  std::filesystem::create_directories(out_dir);

  std::vector<std::future<sim::SimResult>> jobs;
  for (const auto& cfg : configs) {
    jobs.push_back(std::async(std::launch::async, [cfg] { return sim::run(cfg); }));
  }
  std::vector<csv::SummaryRow> rows;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const sim::SimResult result = jobs[i].get();
    WriteFile(std::filesystem::path(out_dir) / (names[i] + ".csv"), result.log);
    PrintMetrics(result.metrics, names[i] + ".");
    rows.emplace_back(names[i], result.metrics);
  }
  std::ofstream summary(std::filesystem::path(out_dir) / "summary.csv");
  if (!summary) throw predsafe::ConfigError("cannot write summary.csv");
  csv::write_summary(summary, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Predictor-feedback safety-critical truck simulator"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  std::string controller;
  std::string out_path;
  CLI::App* run = app.add_subcommand("run", "Simulate one controller");
  AddCommon(run, run_opts);
  run->add_option("--controller", controller, "Controller name")->required();
  run->add_option("--out", out_path, "Trajectory CSV output")->required();

  CommonOptions cmp_opts;
  std::vector<std::string> names;
  std::string out_dir;
  CLI::App* compare =
      app.add_subcommand("compare", "Simulate several controllers side by side");
  AddCommon(compare, cmp_opts);
  compare->add_option("--controllers", names, "Controller names")->required();
  compare->add_option("--out-dir,--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) return CmdRun(run_opts, controller, out_path);
    return CmdCompare(cmp_opts, names, out_dir);
  } catch (const predsafe::SafetyAssertionError& e) {
    std::cerr << "safety assertion failed: " << e.what() << '\n';
    return 2;
  } catch (const predsafe::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
