#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "jmatrix/cli.hpp"
#include "jmatrix/errors.hpp"

namespace cli = jmatrix::cli;

int main(int argc, char** argv) {
  CLI::App app{"J-matrix scattering driver for supercritical inverse-square potentials"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string precision;
  std::size_t jobs = 0;
  bool jobs_given = false;

  for (const char* name : {"reference-convergence", "scatter", "quadrature-check", "greens-check"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "Run configuration (key = value lines)")->required();
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--precision", precision, "Recursion arithmetic")->check(CLI::IsMember({"double", "extended"}));
    sub->add_option_function<std::size_t>(
        "--jobs", [&](std::size_t j) { jobs = j, jobs_given = true; }, "Worker threads (0: all processors)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::exit_code::config_error;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  cli::RunConfig cfg;
  try {
    cfg = cli::load_config(config_path);
    const auto cmd = cli::command_from_string(command);
    if (cfg.command_in_file && cfg.command != cmd)
      throw jmatrix::ConfigError("command", "config names '" + cli::to_string(cfg.command) + "' but '" + command +
                                                "' was requested");
    cfg.command = cmd;
    if (!precision.empty()) cfg.precision = jmatrix::precision_from_string(precision);
    if (jobs_given) cfg.jobs = jobs;
    cfg.out_dir = out_dir;
    cli::validate(cfg);
  } catch (const jmatrix::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cli::exit_code::config_error;
  }

  const auto report = cli::run(cfg);
  for (const auto& m : report.messages) (report.exit_code == 0 ? std::cout : std::cerr) << m << "\n";
  for (const auto& f : report.files) std::cout << "wrote " << f << "\n";
  return report.exit_code;
}
