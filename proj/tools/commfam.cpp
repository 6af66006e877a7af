#include "commfam/cli/config.hpp"
#include "commfam/cli/report.hpp"
#include "commfam/cli/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace commfam::cli;

int run_command(const std::string& config_path, const std::string& out_path, long trials, long seed, int jobs) {
  Config cfg = Config::load(config_path);
  if (trials > 0) cfg.set("trials", std::to_string(trials));
  if (seed >= 0) cfg.set("seed", std::to_string(seed));
  const Scenario s = Scenario::from_config(cfg);
  const Report rep = run_scenario(s, RunOptions{jobs});

  std::size_t failed = 0;
  for (const auto& c : rep.checks) {
    if (c.status == Status::pass) continue;
    ++failed;
    std::cerr << to_string(c.status) << ": " << c.name << " [" << c.anchor << "] " << c.witness << "\n";
  }
  if (out_path.empty()) {
    std::cout << report_to_text(rep);
  } else {
    emit_report(rep, out_path);
  }
  std::cerr << rep.kind << " seed " << rep.seed << ": " << rep.checks.size() - failed << "/" << rep.checks.size()
            << " checks passed in " << rep.duration_ms << " ms\n";
  return rep.passed() ? 0 : 1;
}

void list_scenarios() {
  for (const auto& k : scenario_kinds()) {
    std::cout << k.kind << "\n    " << k.summary << "\n    params:";
    for (const auto& [key, def] : k.params) std::cout << " " << key << (def.empty() ? "" : "=" + def);
    std::cout << " seed (required)\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification runner for commuting families built from determinants"};
  app.set_version_flag("--version", std::string(COMMFAM_VERSION));
  app.require_subcommand(0, 1);

  bool verify_all_flag = false;
  int jobs = 1;
  app.add_flag("--verify-all", verify_all_flag, "Run the full acceptance suite");
  app.add_option("--jobs", jobs, "Worker threads for independent trials")->check(CLI::PositiveNumber);

  std::string config_path, out_path;
  long trials = 0, seed = -1;
  int run_jobs = 1;
  CLI::App* run = app.add_subcommand("run", "Run one scenario from a key = value config file");
  run->add_option("config", config_path, "Scenario config file")->required();
  run->add_option("--out", out_path, "Write the JSON report here instead of stdout");
  run->add_option("--trials", trials, "Override the trial count")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Override the seed")->check(CLI::NonNegativeNumber);
  run->add_option("--jobs", run_jobs, "Worker threads for independent trials")->check(CLI::PositiveNumber);

  CLI::App* list = app.add_subcommand("list-scenarios", "List scenario kinds and their parameters");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(config_path, out_path, trials, seed, run_jobs);
    if (*list) {
      list_scenarios();
      return 0;
    }
    if (verify_all_flag) {
      const auto results = verify_all(RunOptions{jobs}, std::cout);
      bool ok = true;
      for (const auto& r : results) ok = ok && r.passed;
      return ok ? 0 : 1;
    }
    std::cout << app.help();
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  }
}
