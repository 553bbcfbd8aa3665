#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nclp/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"nclp: twisted sums of noncommutative L^p spaces, numerically"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an experiment from a config file");
  std::string config_path, experiment_override, out_path, format = "json";
  bool verbose = false;
  run->add_option("--config", config_path, "config file (json)")->required();
  run->add_option("--experiment", experiment_override,
                  "override the experiment name in the config");
  run->add_option("--out", out_path, "output path (default: stdout)");
  run->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_flag("-v,--verbose", verbose, "echo progress to stderr");

  CLI11_PARSE(app, argc, argv);

  nclp::json config;
  try {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot open config " << config_path << "\n";
      return 2;
    }
    in >> config;
    if (!experiment_override.empty()) config["experiment"] = experiment_override;
  } catch (const std::exception& e) {
    std::cerr << "error: bad config: " << e.what() << "\n";
    return 2;
  }

  nclp::Report report;
  try {
    if (verbose)
      std::cerr << "running " << config.value("experiment", "?") << "...\n";
    report = nclp::run_experiment(config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const std::string payload =
      format == "csv" ? nclp::emit_csv(report) : nclp::emit_json(report);
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    out << payload;
  }
  if (verbose) {
    for (const auto& [name, ok] : report.assertions)
      std::cerr << (ok ? "[pass] " : "[FAIL] ") << name << "\n";
  }
  return report.passed() ? 0 : 1;
}
