#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "fracheat/cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fracheat: fractional heat operator experiments"};
  app.set_version_flag("--version", std::string(FRACHEAT_VERSION));
  app.require_subcommand(1);

  std::string config;
  std::string out;
  for (const auto& name : fracheat::cli::experiment_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", config, "experiment config file")->required();
    sub->add_option("--out", out, "output directory")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fracheat::cli::exit_schema;
  }

  const std::string experiment = app.get_subcommands().front()->get_name();
  return fracheat::cli::run_experiment(experiment, config, out, std::cerr);
}
