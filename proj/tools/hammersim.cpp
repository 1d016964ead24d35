#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "config.h"
#include "scenarios.h"

using namespace hammersim::app;

int main(int argc, char** argv) {
  CLI::App app{"Command-level DRAM read-disturbance mitigation simulator"};
  app.require_subcommand(1);

  std::string config_path;
  ScenarioOptions opts;
  for (const auto& name : scenario_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "scenario config (YAML)");
    sub->add_option("--out", opts.out_dir, "output directory")->required();
    sub->add_option("--seed", opts.seed, "seed for random traces");
    sub->add_option("--jobs", opts.jobs, "parallel engine instances")->check(CLI::PositiveNumber);
  }
  CLI11_PARSE(app, argc, argv);
  opts.name = app.get_subcommands().front()->get_name();

  Config config;
  try {
    config = config_path.empty() ? load_config_string("", "<defaults>") : load_config_file(config_path);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }

  try {
    ScenarioOutcome out = run_scenario(config, opts);
    for (const auto& m : out.messages) std::cout << m << '\n';
    std::cout << "wrote " << out.files.size() << " files to " << opts.out_dir << '\n';
    return out.exit_code;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
