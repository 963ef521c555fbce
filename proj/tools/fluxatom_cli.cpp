#include <iostream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "fluxatom/dispatch.hpp"
#include "fluxatom/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Two-level photoemissive source laboratory"};
  app.fallthrough();
  app.set_version_flag("--version", std::string("fluxatom ") + fluxatom::version);

  std::string config_path;
  std::string out;
  std::string format;
  unsigned long long seed = 0;
  bool quiet = false;

  app.add_option("--config", config_path, "Run configuration (JSON)")->required();
  app.add_option("--out", out, "Output path (default: stdout or run.out)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  auto* seed_opt = app.add_option("--seed", seed, "Random seed override");
  app.add_flag("--quiet", quiet, "Suppress diagnostics");

  app.add_subcommand("steady", "Equilibrium state and linewidth scalars");
  app.add_subcommand("evolve", "Integrate the reduced state");
  app.add_subcommand("count", "Mean photon count and balance residual");
  app.add_subcommand("flux", "Long-time flux ratio with its bound");
  app.add_subcommand("lineshape", "Total cross section over a frequency scan");
  app.add_subcommand("diffxs", "Differential cross section over angles");
  app.add_subcommand("oracle", "Jump Monte Carlo against the deterministic solution");
  app.add_subcommand("validate", "Identity suite over a seeded model corpus");
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  fluxatom::CliOverrides cli;
  for (const CLI::App* sub : app.get_subcommands()) cli.command = sub->get_name();
  cli.out = out;
  cli.format = format;
  cli.has_seed = seed_opt->count() > 0;
  cli.seed = seed;
  cli.quiet = quiet;

  fluxatom::RunConfig cfg;
  try {
    cfg = fluxatom::load_config(config_path);
  } catch (const fluxatom::Error& e) {
    std::cerr << "fluxatom: " << e.what() << "\n";
    return 2;
  }
  return fluxatom::dispatch(std::move(cfg), cli, std::cout, std::cerr);
}
