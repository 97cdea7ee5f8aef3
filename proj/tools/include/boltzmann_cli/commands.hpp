#pragma once

#include <iosfwd>

#include "boltzmann_cli/run_config.hpp"

namespace boltzmann::cli {

enum ExitCode : int { kOk = 0, kRuntimeFailure = 1, kConfigInvalid = 2, kToleranceViolated = 3 };

// Each command validates the configuration, writes its files under
// config.output_dir, prints a summary to `log` and returns the exit code.
int cmd_simulate(const RunConfig& config, std::ostream& log);
int cmd_region(const RunConfig& config, std::ostream& log);
int cmd_spectrum(const RunConfig& config, std::ostream& log);
int cmd_verify(const RunConfig& config, std::ostream& log);

}  // namespace boltzmann::cli
