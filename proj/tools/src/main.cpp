#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "boltzmann/error.hpp"
#include "boltzmann_cli/commands.hpp"

using boltzmann::cli::ConfigError;
using boltzmann::cli::RunConfig;

int main(int argc, char** argv) {
  CLI::App app{"Central-force billiard with a straight wall: trajectories, allowed regions, Koopman spectra and "
               "measure checks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file; flags override it");

  // Flags are kept as text and applied through the same path as file keys.
  struct Flag {
    const char* name;
    const char* key;
    const char* help;
    std::string value;
  };
  std::vector<Flag> flags{
      {"--alpha", "alpha", "attraction strength alpha", {}},
      {"--beta", "beta", "beta, or a comma-separated list", {}},
      {"--energy", "energy", "total energy E < 0", {}},
      {"--gamma", "gamma", "wall offset gamma > 0", {}},
      {"--grid", "grid", "partition NGxNC", {}},
      {"--nodes", "nodes", "quadrature nodes per cell L (perfect square)", {}},
      {"--rule", "rule", "quadrature rule: midpoint or gauss", {}},
      {"--steps", "steps", "reflections per trajectory", {}},
      {"--seed", "seed", "seed of the 64-bit Mersenne Twister used for sampling", {}},
      {"--out", "out", "output directory", {}},
      {"--window", "window", "eigenvalue window around 1", {}},
      {"--g-origin", "g_origin", "start of the displayed g window", {}},
      {"--eigenfunctions", "eigenfunctions", "eigenfunctions to export", {}},
      {"--samples", "samples", "random states per beta for verify", {}},
      {"--threads", "threads", "assembly threads, 0 for all cores", {}},
      {"--self-test", "self_test", "none, identity, permutation (spectrum) or tamper (verify)", {}},
  };
  for (auto& f : flags) app.add_option(f.name, f.value, f.help);
  std::vector<std::string> inits;
  app.add_option("--init", inits, "initial state g,C (repeatable)");

  auto* simulate = app.add_subcommand("simulate", "iterate trajectories and write CSV files");
  auto* region = app.add_subcommand("region", "compute allowed-region masks");
  auto* spectrum = app.add_subcommand("spectrum", "assemble the Koopman matrix and export its spectrum");
  auto* verify = app.add_subcommand("verify", "check unit Jacobian and reflection symmetry on random states");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : boltzmann::cli::kConfigInvalid;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) config = boltzmann::cli::load_config(config_path);
    for (const auto& f : flags) {
      if (app.count(f.name) > 0) boltzmann::cli::apply_setting(config, f.key, f.value);
    }
    if (!inits.empty()) {
      std::string joined;
      for (const auto& s : inits) joined += s + ";";
      boltzmann::cli::apply_setting(config, "init", joined);
    }

    if (simulate->parsed()) return boltzmann::cli::cmd_simulate(config, std::cout);
    if (region->parsed()) return boltzmann::cli::cmd_region(config, std::cout);
    if (spectrum->parsed()) return boltzmann::cli::cmd_spectrum(config, std::cout);
    if (verify->parsed()) return boltzmann::cli::cmd_verify(config, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return boltzmann::cli::kConfigInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return boltzmann::cli::kRuntimeFailure;
  }
  return boltzmann::cli::kRuntimeFailure;
}
