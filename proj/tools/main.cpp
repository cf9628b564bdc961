#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "znlgt/version.hpp"

using namespace znlgt;

int main(int argc, char** argv) {
  CLI::App app{"Exact diagonalization for Z_n gauge chains with staggered fermions"};
  app.set_version_flag("--version", std::string(znlgt::version));
  app.require_subcommand(1);

  std::string config_path;
  cli::CommandOptions opt;
  double tolerance = -1.0;
  std::string out_dir;

  app.add_option("--config", config_path, "configuration file (key-value or JSON)");
  app.add_option("--out", out_dir, "output directory (overrides output.directory)");
  app.add_option("--tolerance", tolerance, "override identity/certification gates");
  app.add_option("--cap", opt.cap, "dense-solve dimension cap");

  auto* check = app.add_subcommand("check", "run the algebraic identity suite");
  auto* gauss = app.add_subcommand("gauss", "enumerate the Gauss-law sector");
  auto* spectrum = app.add_subcommand("spectrum", "sector eigenvalues of H_n");
  auto* effective =
      app.add_subcommand("effective", "certify the second-order effective Hamiltonian");
  auto* evolve = app.add_subcommand("evolve", "real-time evolution time series");
  auto* sweep = app.add_subcommand("sweep", "penalty-strength or link-dimension sweep");
  for (auto* sub : {check, gauss, spectrum, effective, evolve, sweep})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  if (tolerance >= 0.0) opt.tolerance = tolerance;
  if (!out_dir.empty()) opt.out_dir = out_dir;

  cli::RunConfig cfg;
  try {
    cfg = config_path.empty() ? cli::parse_config_text("")
                              : cli::load_config_file(config_path);
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (check->parsed()) return cli::cmd_check(cfg, opt);
    if (gauss->parsed()) return cli::cmd_gauss(cfg, opt);
    if (spectrum->parsed()) return cli::cmd_spectrum(cfg, opt);
    if (effective->parsed()) return cli::cmd_effective(cfg, opt);
    if (evolve->parsed()) return cli::cmd_evolve(cfg, opt);
    if (sweep->parsed()) return cli::cmd_sweep(cfg, opt);
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
