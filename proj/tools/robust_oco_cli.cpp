#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "robust_oco/checks.hpp"
#include "robust_oco/harness.hpp"

using namespace robust_oco;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

ExperimentConfig load_with_overrides(const std::string& path, const std::optional<std::uint64_t>& seed,
                                     const std::optional<std::string>& out) {
  ExperimentConfig cfg = load_config(path);
  if (seed) cfg.seeds = {*seed};
  if (out) cfg.output_path = *out;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corruption-robust online learning experiments"};
  app.require_subcommand(1);
  std::string config_path, check_name;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  app.add_option("--seed", seed, "Override the configured seeds with a single seed");
  app.add_option("--out", out, "Override the output directory");

  auto* run_cmd = app.add_subcommand("run", "Run one experiment and write trace.csv and summary.csv");
  run_cmd->add_option("--config", config_path, "Experiment config (INI)")->required();
  run_cmd->add_option("--seed", seed, "Override the configured seeds with a single seed");
  run_cmd->add_option("--out", out, "Override the output directory");

  auto* sweep_cmd = app.add_subcommand("sweep", "Run the k sweep with T = k^2 and write sweep.csv");
  sweep_cmd->add_option("--config", config_path, "Experiment config (INI)")->required();
  sweep_cmd->add_option("--seed", seed, "Override the configured seeds with a single seed");
  sweep_cmd->add_option("--out", out, "Override the output directory");

  auto* verify_cmd = app.add_subcommand("verify", "Run a named property suite");
  verify_cmd->add_option("--check", check_name, "Check name (see list-checks)")->required();

  auto* list_cmd = app.add_subcommand("list-checks", "List the registered property suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*list_cmd) {
      for (const auto& c : check_registry()) std::cout << c.name << "\t" << c.description << "\n";
      return kOk;
    }
    if (*verify_cmd) {
      const Check* c = find_check(check_name);
      if (!c) {
        std::cerr << "unknown check '" << check_name << "'; valid names:";
        for (const auto& r : check_registry()) std::cerr << " " << r.name;
        std::cerr << "\n";
        return kUsage;
      }
      std::cout << c->name << "\n";
      const bool ok = c->run(std::cout);
      std::cout << (ok ? "PASS " : "FAIL ") << c->name << "\n";
      return ok ? kOk : kCheckFailed;
    }
    ExperimentConfig cfg;
    try {
      cfg = load_with_overrides(config_path, seed, out);
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kUsage;
    }
    if (*run_cmd) {
      const auto trace = run(cfg);
      const auto& s = trace.summary;
      std::cout << "seed " << s.seed << ": T=" << s.T << " true regret " << format_double(s.final_true_regret)
                << ", observed regret " << format_double(s.final_observed_regret) << "\n"
                << "wrote " << cfg.output_path << "/trace.csv and summary.csv\n";
      return kOk;
    }
    if (*sweep_cmd) {
      const auto rows = sweep(cfg);
      std::filesystem::create_directories(cfg.output_path);
      const auto path = std::filesystem::path(cfg.output_path) / "sweep.csv";
      std::ofstream f(path);
      if (!f) throw std::runtime_error("cannot write " + path.string());
      write_sweep_csv(f, rows);
      std::cout << rows.size() << " rows written to " << path.string() << "\n";
      return kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}
