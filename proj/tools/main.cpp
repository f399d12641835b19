#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "sklsc/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "sklsc - conformal scalar-curvature proportionality experiments on "
      "periodic grids"};
  app.require_subcommand(1);

  std::string config_path, out_path, solution_dir, demo_name;
  bool geometric = false;

  CLI::App* scan = app.add_subcommand(
      "scan", "Sample lambda0 over the scaling-constant regimes, emit CSV");
  scan->add_option("--config", config_path, "config file")->required();
  scan->add_option("--out", out_path, "CSV output path ('-' for stdout)");

  CLI::App* solve = app.add_subcommand(
      "solve", "Locate every lambda0 zero crossing and emit solution bundles");
  solve->add_option("--config", config_path, "config file")->required();
  solve->add_option("--out", out_path, "output directory for bundles");

  CLI::App* verify =
      app.add_subcommand("verify", "Re-check the residuals of a solution bundle");
  verify->add_option("--config", config_path, "config file")->required();
  verify->add_option("--solution", solution_dir, "solution bundle directory")
      ->required();
  verify->add_flag("--geometric", geometric,
                   "also push the metric through the curvature formulas");

  CLI::App* poincare =
      app.add_subcommand("poincare", "Poincare constant of the [grid] section");
  poincare->add_option("--config", config_path, "config file")->required();

  CLI::App* instability = app.add_subcommand(
      "instability", "Scan lambda0 of the [family] section, emit CSV");
  instability->add_option("--config", config_path, "config file")->required();
  instability->add_option("--out", out_path, "CSV output path ('-' for stdout)");

  CLI::App* demo = app.add_subcommand("demo", "Run a named preset experiment");
  demo->add_option("name", demo_name, "preset name")->required();
  demo->add_option("--out", out_path, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : sklsc::cli::kConfigError;
  }

  try {
    if (*scan) return sklsc::cli::run_scan(config_path, out_path);
    if (*solve) return sklsc::cli::run_solve(config_path, out_path);
    if (*verify)
      return sklsc::cli::run_verify(config_path, solution_dir, geometric);
    if (*poincare) return sklsc::cli::run_poincare(config_path);
    if (*instability) return sklsc::cli::run_instability(config_path, out_path);
    if (*demo) return sklsc::cli::run_demo(demo_name, out_path);
  } catch (const sklsc::SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return sklsc::cli::kSolverFailure;
  } catch (const sklsc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return sklsc::cli::kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sklsc::cli::kConfigError;
  }
  return sklsc::cli::kConfigError;
}
