#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "boltzmann/koopman.hpp"
#include "boltzmann/orbits.hpp"

namespace boltzmann::cli {

/// Invalid configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SelfTest { None, Identity, Permutation, Tamper };

struct RunConfig {
  Params params;
  std::vector<double> beta_list{0.0};
  std::size_t n_g = 40;
  std::size_t n_C = 20;
  QuadratureKind rule = QuadratureKind::UniformMidpoint;
  std::size_t nodes = 25;
  std::size_t n_steps = 10000;
  std::vector<OrbitState> initial_states{{0.2, 0.8}};
  std::uint64_t seed = 20240601;
  std::string output_dir = "out";
  double g_window_origin = 0.0;
  double window = 0.05;
  std::size_t eigenfunctions = 3;
  std::size_t samples = 100;
  double step_size = 1e-6;
  double det_tolerance = 1e-4;
  double symplectic_tolerance = 1e-9;
  unsigned threads = 0;
  SelfTest self_test = SelfTest::None;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// key = value lines; '#' starts a comment; unknown keys are rejected.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});
void serialize_config(std::ostream& out, const RunConfig& config);

/// Apply one key = value assignment (shared by files and flags).
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Domain checks for every beta in the list; throws ConfigError naming the
/// violated precondition.
void validate(const RunConfig& config);

/// Params with beta replaced.
Params params_for(const RunConfig& config, double beta);

std::string to_string(QuadratureKind kind);
std::string to_string(SelfTest test);

}  // namespace boltzmann::cli
