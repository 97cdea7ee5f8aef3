#include "boltzmann_cli/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "boltzmann/error.hpp"
#include "boltzmann/sim.hpp"

namespace boltzmann::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) parts.push_back(trim(item));
  return parts;
}

double to_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    throw ConfigError(key + ": expected a finite number, got '" + text + "'");
  return value;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& text) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ConfigError(key + ": expected a non-negative integer, got '" + text + "'");
  return value;
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

std::string to_string(QuadratureKind kind) {
  return kind == QuadratureKind::UniformMidpoint ? "midpoint" : "gauss";
}

std::string to_string(SelfTest test) {
  switch (test) {
    case SelfTest::None: return "none";
    case SelfTest::Identity: return "identity";
    case SelfTest::Permutation: return "permutation";
    case SelfTest::Tamper: return "tamper";
  }
  return "none";
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "alpha") {
    c.params.alpha = to_double(key, value);
  } else if (key == "beta") {
    c.beta_list.clear();
    for (const auto& item : split(value, ',')) c.beta_list.push_back(to_double(key, item));
    if (c.beta_list.empty()) throw ConfigError("beta: at least one value is required");
    c.params.beta = c.beta_list.front();
  } else if (key == "energy") {
    c.params.energy = to_double(key, value);
  } else if (key == "gamma") {
    c.params.gamma = to_double(key, value);
  } else if (key == "grid") {
    const auto x = value.find('x');
    if (x == std::string::npos) throw ConfigError("grid: expected NGxNC, got '" + value + "'");
    c.n_g = to_unsigned(key, trim(value.substr(0, x)));
    c.n_C = to_unsigned(key, trim(value.substr(x + 1)));
  } else if (key == "nodes") {
    c.nodes = to_unsigned(key, value);
  } else if (key == "rule") {
    if (value == "midpoint") {
      c.rule = QuadratureKind::UniformMidpoint;
    } else if (value == "gauss") {
      c.rule = QuadratureKind::GaussLegendre;
    } else {
      throw ConfigError("rule: expected midpoint or gauss, got '" + value + "'");
    }
  } else if (key == "steps") {
    c.n_steps = to_unsigned(key, value);
  } else if (key == "init") {
    c.initial_states.clear();
    for (const auto& pair : split(value, ';')) {
      if (pair.empty()) continue;
      const auto gc = split(pair, ',');
      if (gc.size() != 2) throw ConfigError("init: expected g,C pairs separated by ';', got '" + pair + "'");
      c.initial_states.push_back({to_double(key, gc[0]), to_double(key, gc[1])});
    }
  } else if (key == "seed") {
    c.seed = to_unsigned(key, value);
  } else if (key == "out") {
    c.output_dir = value;
  } else if (key == "g_origin") {
    c.g_window_origin = to_double(key, value);
  } else if (key == "window") {
    c.window = to_double(key, value);
  } else if (key == "eigenfunctions") {
    c.eigenfunctions = to_unsigned(key, value);
  } else if (key == "samples") {
    c.samples = to_unsigned(key, value);
  } else if (key == "step_size") {
    c.step_size = to_double(key, value);
  } else if (key == "det_tolerance") {
    c.det_tolerance = to_double(key, value);
  } else if (key == "symplectic_tolerance") {
    c.symplectic_tolerance = to_double(key, value);
  } else if (key == "threads") {
    c.threads = static_cast<unsigned>(to_unsigned(key, value));
  } else if (key == "self_test") {
    if (value == "none") {
      c.self_test = SelfTest::None;
    } else if (value == "identity") {
      c.self_test = SelfTest::Identity;
    } else if (value == "permutation") {
      c.self_test = SelfTest::Permutation;
    } else if (value == "tamper") {
      c.self_test = SelfTest::Tamper;
    } else {
      throw ConfigError("self_test: expected none, identity, permutation or tamper, got '" + value + "'");
    }
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

RunConfig parse_config(std::istream& in, RunConfig base) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(number) + ": expected key = value, got '" + line + "'");
    apply_setting(base, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
  return parse_config(in, std::move(base));
}

void serialize_config(std::ostream& out, const RunConfig& c) {
  out << "# potential -alpha/(2r) + beta/(2r^2); energy E < 0; wall y = gamma (length units)\n";
  out << "alpha = " << num(c.params.alpha) << '\n';
  out << "beta = ";
  for (std::size_t i = 0; i < c.beta_list.size(); ++i) out << (i ? ", " : "") << num(c.beta_list[i]);
  out << '\n';
  out << "energy = " << num(c.params.energy) << '\n';
  out << "gamma = " << num(c.params.gamma) << '\n';
  out << "# partition of [g_origin, g_origin + 2 pi) x [C_min, C_max], radians x angular momentum\n";
  out << "grid = " << c.n_g << 'x' << c.n_C << '\n';
  out << "g_origin = " << num(c.g_window_origin) << '\n';
  out << "# quadrature nodes per cell (a perfect square) and rule\n";
  out << "nodes = " << c.nodes << '\n';
  out << "rule = " << to_string(c.rule) << '\n';
  out << "# reflections per trajectory; initial orbits as g,C pairs\n";
  out << "steps = " << c.n_steps << '\n';
  out << "init = ";
  for (std::size_t i = 0; i < c.initial_states.size(); ++i)
    out << (i ? "; " : "") << num(c.initial_states[i].g) << ',' << num(c.initial_states[i].C);
  out << '\n';
  out << "# eigenvalue window around 1 and exported eigenfunctions\n";
  out << "window = " << num(c.window) << '\n';
  out << "eigenfunctions = " << c.eigenfunctions << '\n';
  out << "# verification: random states, finite-difference step, tolerances\n";
  out << "seed = " << c.seed << '\n';
  out << "samples = " << c.samples << '\n';
  out << "step_size = " << num(c.step_size) << '\n';
  out << "det_tolerance = " << num(c.det_tolerance) << '\n';
  out << "symplectic_tolerance = " << num(c.symplectic_tolerance) << '\n';
  out << "threads = " << c.threads << '\n';
  out << "self_test = " << to_string(c.self_test) << '\n';
  out << "out = " << c.output_dir << '\n';
}

Params params_for(const RunConfig& config, double beta) {
  Params p = config.params;
  p.beta = beta;
  return p;
}

void validate(const RunConfig& c) {
  if (c.beta_list.empty()) throw ConfigError("beta: at least one value is required");
  for (double beta : c.beta_list) {
    try {
      validate_billiard_params(params_for(c, beta));
    } catch (const Error& err) {
      throw ConfigError("beta=" + num(beta) + ": " + err.what());
    }
  }
  if (c.n_g == 0 || c.n_C == 0) throw ConfigError("grid: both dimensions must be positive");
  try {
    (void)make_rule(c.rule, c.nodes);
  } catch (const Error& err) {
    throw ConfigError(std::string("nodes: ") + err.what());
  }
  if (!(c.window >= 0.0)) throw ConfigError("window: must be non-negative");
  if (!(c.step_size > 0.0)) throw ConfigError("step_size: must be positive");
  if (c.output_dir.empty()) throw ConfigError("out: output directory must be set");
}

}  // namespace boltzmann::cli
