#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "boltzmann/billiard.hpp"

namespace boltzmann {

struct JacobianReport {
  OrbitState state;
  double theta_star = 0.0;
  double det = 0.0;
  double det_2h = 0.0;  // Richardson cross-check at twice the step
  double step_size = 0.0;
  double condition_estimate = 0.0;  // sigma_max / sigma_min of the 2x2 Jacobian
};

/// Central-difference Jacobian of (g, C) -> (g', C') over `steps`
/// applications of the map, starting from the orbit `state` whose arc ends
/// at theta_star. Perturbed orbits reflect at their own arc end next to
/// theta_star. Map errors at the base point propagate; a failing stencil
/// point throws NeighborhoodInvalid.
JacobianReport jacobian_det(const Params& params, OrbitState state, double theta_star, double h = 1e-6,
                            std::size_t steps = 1);

/// Rebuild the Cartesian momentum before and after the reflection in the
/// wall frame and return the largest deviation from (p1, p2) -> (p1, -p2)
/// together with the wall residual q2 = r sin(theta) - gamma.
double reflection_symplectic_check(const ReflectionEvent& event);

/// Orbit and arc end of a billiard state.
struct SampledState {
  OrbitState state;
  double theta_star = 0.0;
};

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit Mersenne
/// Twister (std::mt19937_64) draw, reproducible across platforms.
double unit_uniform(std::uint64_t draw);

/// `count` states drawn uniformly from [0, 2 pi) x [-C_max, C_max] by
/// rejection, keeping those with an arc on which the map is defined.
std::vector<SampledState> sample_billiard_states(const Params& params, std::size_t count, std::uint64_t seed,
                                                 const SearchOptions& options = {});

}  // namespace boltzmann
