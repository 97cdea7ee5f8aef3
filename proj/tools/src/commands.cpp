#include "boltzmann_cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "boltzmann/error.hpp"
#include "boltzmann/export.hpp"
#include "boltzmann/koopman.hpp"
#include "boltzmann/measure.hpp"
#include "boltzmann/sim.hpp"

namespace boltzmann::cli {
namespace {

namespace fs = std::filesystem;

std::string tag(double beta) {
  std::ostringstream os;
  os << "beta" << beta;
  return os.str();
}

std::ofstream open_output(const RunConfig& config, const std::string& name) {
  fs::create_directories(config.output_dir);
  const fs::path path = fs::path(config.output_dir) / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void close_output(std::ofstream& out, const std::string& name) {
  out.close();
  if (!out) throw std::runtime_error("failed to flush " + name);
}

const char* reason_name(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::MaxSteps: return "MaxSteps";
    case TerminationReason::LeftAllowedRegion: return "LeftAllowedRegion";
    case TerminationReason::Error: return "Error";
  }
  return "Error";
}

}  // namespace

int cmd_simulate(const RunConfig& config, std::ostream& log) {
  validate(config);
  if (config.initial_states.empty()) throw ConfigError("init: at least one initial state is required");
  int status = kOk;
  for (double beta : config.beta_list) {
    const Params params = params_for(config, beta);
    const AllowedRegion region = compute_allowed_region(params, config.n_g, config.n_C, config.g_window_origin);
    for (std::size_t i = 0; i < config.initial_states.size(); ++i) {
      const OrbitState init = config.initial_states[i];
      if (!locate_arc(params, init)) {
        std::ostringstream os;
        os << "init: (g=" << init.g << ", C=" << init.C << ") has no arc above the wall at " << tag(beta);
        throw ConfigError(os.str());
      }
      const TrajectoryRecord record = iterate_trajectory(params, init, config.n_steps);
      const std::string name = "trajectory_" + tag(beta) + "_" + std::to_string(i) + ".csv";
      std::ofstream out = open_output(config, name);
      write_trajectory_csv(out, record, config.g_window_origin);
      close_output(out, name);
      log << name << ": " << record.steps.size() - 1 << " reflections, " << reason_name(record.terminated_reason)
          << ", coverage " << coverage_fraction(record, region) << '\n';
      if (record.terminated_reason == TerminationReason::Error) {
        log << "  stopped by " << to_string(*record.error) << '\n';
        status = kRuntimeFailure;
      }
    }
  }
  return status;
}

int cmd_region(const RunConfig& config, std::ostream& log) {
  validate(config);
  for (double beta : config.beta_list) {
    const AllowedRegion region =
        compute_allowed_region(params_for(config, beta), config.n_g, config.n_C, config.g_window_origin);
    const std::string name = "region_" + tag(beta) + ".json";
    std::ofstream out = open_output(config, name);
    write_region_json(out, region);
    close_output(out, name);
    log << name << ": " << region.allowed_count() << " of " << region.mask.size() << " cells allowed\n";
  }
  return kOk;
}

int cmd_spectrum(const RunConfig& config, std::ostream& log) {
  validate(config);
  const QuadratureRule rule = make_rule(config.rule, config.nodes);
  for (double beta : config.beta_list) {
    const Params params = params_for(config, beta);
    const Partition partition =
        make_partition(compute_allowed_region(params, config.n_g, config.n_C, config.g_window_origin));
    PointMap map;
    switch (config.self_test) {
      case SelfTest::Identity: map = identity_point_map(); break;
      case SelfTest::Permutation: map = cyclic_permutation_map(partition); break;
      default: map = billiard_point_map(params); break;
    }
    KoopmanSystem system = assemble(partition, rule, map, config.threads);
    solve_spectrum(system, config.eigenfunctions);
    const ErgodicityDiagnostic diag = ergodicity_diagnostic(system, config.window);

    const std::string name = "spectrum_" + tag(beta) + ".csv";
    std::ofstream out = open_output(config, name);
    write_spectrum_csv(out, system);
    close_output(out, name);
    for (std::size_t k = 0; k < static_cast<std::size_t>(system.eigenvectors.cols()); ++k) {
      const std::string ef = "eigenfunction_" + tag(beta) + "_" + std::to_string(k) + ".json";
      std::ofstream efs = open_output(config, ef);
      write_eigenfunction_json(efs, system, k);
      close_output(efs, ef);
    }
    log << name << ": N=" << partition.N() << ", " << diag.count_near_one << " eigenvalue(s) within "
        << config.window << " of 1, gap " << diag.gap << ", escaped nodes " << system.stats.escaped << ", undefined nodes "
        << system.stats.failed << '\n';
  }
  return kOk;
}

int cmd_verify(const RunConfig& config, std::ostream& log) {
  validate(config);
  std::ostringstream report;
  report.precision(17);
  bool violated = false;
  for (double beta : config.beta_list) {
    const Params params = params_for(config, beta);
    const auto states = sample_billiard_states(params, config.samples, config.seed);
    std::vector<JacobianReport> reports;
    std::size_t skipped = 0;
    double worst_det = 0.0;
    double worst_symplectic = 0.0;
    for (const auto& s : states) {
      try {
        reports.push_back(jacobian_det(params, s.state, s.theta_star, config.step_size));
        worst_det = std::max(worst_det, std::abs(reports.back().det - 1.0));
      } catch (const Error& err) {
        if (err.code() != ErrorCode::NeighborhoodInvalid) throw;
        ++skipped;
      }
      ReflectionEvent event = reflect_event(params, s.state, s.theta_star);
      if (config.self_test == SelfTest::Tamper) event.outgoing.C += 1e-3;
      worst_symplectic = std::max(worst_symplectic, reflection_symplectic_check(event));
    }
    const std::string name = "measure_" + tag(beta) + ".csv";
    std::ofstream out = open_output(config, name);
    write_measure_csv(out, reports);
    close_output(out, name);

    const bool det_ok = worst_det < config.det_tolerance;
    const bool symplectic_ok = worst_symplectic < config.symplectic_tolerance;
    violated = violated || !det_ok || !symplectic_ok;
    report << tag(beta) << " states=" << states.size() << " skipped=" << skipped << " max_abs_det_minus_one="
           << worst_det << (det_ok ? " ok" : " VIOLATED") << " max_reflection_deviation=" << worst_symplectic
           << (symplectic_ok ? " ok" : " VIOLATED") << '\n';
  }
  std::ofstream out = open_output(config, "verify_report.txt");
  out << report.str();
  close_output(out, "verify_report.txt");
  log << report.str();
  return violated ? kToleranceViolated : kOk;
}

}  // namespace boltzmann::cli
