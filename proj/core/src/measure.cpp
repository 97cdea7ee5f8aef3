#include "boltzmann/measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "boltzmann/error.hpp"
#include "boltzmann/sim.hpp"

namespace boltzmann {
namespace {

constexpr double kPi = std::numbers::pi;

double gap_slope(const Params& params, OrbitState state, double theta) {
  if (params.alpha == 0.0) {
    const CotesOrbit orbit = cotes_from_state(params, state);
    return radius_derivative(orbit, theta) * std::sin(theta) + radius_at_angle(orbit, theta) * std::cos(theta);
  }
  const ConicOrbit orbit = conic_from_state(params, state);
  return radius_derivative(orbit, theta) * std::sin(theta) + radius_at_angle(orbit, theta) * std::cos(theta);
}

// Arc end of a perturbed orbit, by Newton iteration from the unperturbed end.
double nearby_wall_hit(const Params& params, OrbitState state, double theta_hint) {
  double theta = theta_hint;
  for (int it = 0; it < 50; ++it) {
    const double step = wall_gap(params, state, theta) / gap_slope(params, state, theta);
    theta -= step;
    if (!std::isfinite(theta) || std::abs(theta - theta_hint) > 1e-2)
      throw Error(ErrorCode::NeighborhoodInvalid, "perturbed orbit has no wall hit near the unperturbed one");
    if (std::abs(step) <= 4e-16 * std::max(1.0, std::abs(theta))) return theta;
  }
  return theta;
}

double period_of(const Params& params, double C) {
  if (params.alpha == 0.0) return 0.0;  // psi is unique for cosh orbits
  return 2.0 * kPi / conic_from_state(params, {0.0, C}).omega;
}

std::array<double, 2> image(const Params& params, OrbitState state, double theta, std::size_t steps) {
  for (std::size_t k = 0; k < steps; ++k) {
    const MapResult next = billiard_map(params, state, theta);
    state = next.next_state;
    theta = next.next_point.theta;
  }
  return {state.g, state.C};
}

// Same pericenter branch as the base image; g' is defined modulo 2 pi / omega'.
double unwrap(double g, double reference, double period) {
  if (period <= 0.0) return g;
  return g + period * std::round((reference - g) / period);
}

struct Stencil {
  Eigen::Matrix2d J;
};

Eigen::Matrix2d central_jacobian(const Params& params, OrbitState state, double theta_star, double h,
                                 std::size_t steps, const std::array<double, 2>& base) {
  const double period = period_of(params, base[1]);
  Eigen::Matrix2d J;
  for (int col = 0; col < 2; ++col) {
    std::array<std::array<double, 2>, 2> f{};
    for (int side = 0; side < 2; ++side) {
      OrbitState p = state;
      const double delta = side == 0 ? h : -h;
      (col == 0 ? p.g : p.C) += delta;
      try {
        const double theta = nearby_wall_hit(params, p, theta_star);
        f[side] = image(params, p, theta, steps);
      } catch (const Error& err) {
        if (err.code() == ErrorCode::NeighborhoodInvalid) throw;
        throw Error(ErrorCode::NeighborhoodInvalid, std::string("stencil point failed: ") + err.what());
      }
      f[side][0] = unwrap(f[side][0], base[0], period);
    }
    J(0, col) = (f[0][0] - f[1][0]) / (2.0 * h);
    J(1, col) = (f[0][1] - f[1][1]) / (2.0 * h);
  }
  return J;
}

}  // namespace

JacobianReport jacobian_det(const Params& params, OrbitState state, double theta_star, double h, std::size_t steps) {
  if (!(h > 0.0)) throw Error(ErrorCode::DomainError, "finite-difference step must be positive");
  const std::array<double, 2> base = image(params, state, theta_star, steps);
  const Eigen::Matrix2d J = central_jacobian(params, state, theta_star, h, steps, base);
  const Eigen::Matrix2d J2 = central_jacobian(params, state, theta_star, 2.0 * h, steps, base);

  JacobianReport report;
  report.state = state;
  report.theta_star = theta_star;
  report.step_size = h;
  report.det = J.determinant();
  report.det_2h = J2.determinant();
  const Eigen::Vector2d sv = Eigen::JacobiSVD<Eigen::Matrix2d>(J).singularValues();
  report.condition_estimate = sv[1] > 0.0 ? sv[0] / sv[1] : std::numeric_limits<double>::infinity();
  return report;
}

double reflection_symplectic_check(const ReflectionEvent& event) {
  const double r = event.r_star;
  const double s = std::sin(event.theta_star);
  const double c = std::cos(event.theta_star);
  // Velocity (C / r^2) (r' r_hat + r theta_hat) in Cartesian components.
  auto momentum = [&](double C, double r_prime) {
    const double w = C / (r * r);
    return std::array<double, 2>{w * (r_prime * c - r * s), w * (r_prime * s + r * c)};
  };
  const auto p_in = momentum(event.incoming.C, event.r_prime_in);
  const auto p_out = momentum(event.outgoing.C, event.r_prime_out);
  // Wall frame: q1 along the wall, q2 = y - gamma; reflection is (p1, -p2).
  const double dev_p1 = std::abs(p_out[0] - p_in[0]);
  const double dev_p2 = std::abs(p_out[1] + p_in[1]);
  const double dev_q2 = std::abs(r * s - event.gamma);
  return std::max({dev_p1, dev_p2, dev_q2});
}

double unit_uniform(std::uint64_t draw) { return static_cast<double>(draw >> 11) * 0x1.0p-53; }

std::vector<SampledState> sample_billiard_states(const Params& params, std::size_t count, std::uint64_t seed,
                                                 const SearchOptions& options) {
  std::mt19937_64 rng(seed);
  const double cm = c_max(params);
  std::vector<SampledState> out;
  out.reserve(count);
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 1000 * (count + 10)) throw Error(ErrorCode::DomainError, "allowed region is too small to sample");
    const OrbitState x{2.0 * kPi * unit_uniform(rng()), cm * (2.0 * unit_uniform(rng()) - 1.0)};
    const auto arc = locate_arc(params, x, options);
    if (!arc) continue;
    try {
      (void)billiard_map(params, arc->state, arc->theta_end, options);
    } catch (const Error&) {
      continue;
    }
    out.push_back({arc->state, arc->theta_end});
  }
  return out;
}

}  // namespace boltzmann
