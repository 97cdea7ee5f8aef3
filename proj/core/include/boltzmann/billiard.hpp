#pragma once

#include <cstddef>
#include <optional>

#include "boltzmann/orbits.hpp"

namespace boltzmann {

/// A point on the wall r sin(theta) = gamma, 0 < theta < pi.
struct WallPoint {
  double r = 0.0;
  double theta = 0.0;
};

/// One elastic reflection at (r_star, theta_star). Primes are dr/dtheta of
/// the incoming and outgoing orbits at the hit point.
struct ReflectionEvent {
  double r_star = 0.0;
  double theta_star = 0.0;
  OrbitState incoming;
  OrbitState outgoing;
  double r_prime_in = 0.0;
  double r_prime_out = 0.0;
  double gamma = 0.0;
};

struct MapResult {
  OrbitState next_state;
  ReflectionEvent event;
  WallPoint next_point;
};

/// Density of the sampling grid used to isolate wall crossings.
struct SearchOptions {
  std::size_t samples = 4096;
};

/// Angular momentum and dr/dtheta after mirroring the velocity in the wall.
/// Throws TangentHit for grazing incidence and DegenerateReflection when the
/// outgoing angular momentum vanishes.
struct ReflectedMomentum {
  double C = 0.0;
  double r_prime = 0.0;
};

ReflectedMomentum reflect_momentum(double C_in, double r_prime_in, double r_star, double theta_star);

/// r(theta) sin(theta) - gamma for the orbit of `state` (conic for alpha > 0,
/// Cotes for alpha == 0).
double wall_gap(const Params& params, OrbitState state, double theta);

// Conic case (alpha > 0, C^2 + beta > 0).
OrbitState reflect(const Params& params, OrbitState state_in, double theta_star);
WallPoint next_reflection(const Params& params, OrbitState state, double theta_start,
                          const SearchOptions& options = {});

// Cotes case (alpha == 0, C^2 + beta < 0). `state.g` holds the apocenter
// argument psi.
OrbitState cotes_reflect(const Params& params, OrbitState state_in, double theta_star);
WallPoint cotes_next_reflection(const Params& params, OrbitState state, double theta_start,
                                const SearchOptions& options = {});

/// Full reflection record; dispatches on alpha.
ReflectionEvent reflect_event(const Params& params, OrbitState state_in, double theta_star);

/// Reflect the incoming orbit at theta_current, then locate where the
/// outgoing orbit meets the wall next. Dispatches on alpha.
MapResult billiard_map(const Params& params, OrbitState state, double theta_current,
                       const SearchOptions& options = {});

/// The arc of an orbit above the wall, in the direction of motion.
struct Arc {
  OrbitState state;  // canonical representative (closest pericenter to theta_start)
  double theta_start = 0.0;
  double theta_end = 0.0;
};

/// Interpret a phase-space point (g taken modulo 2 pi) as a billiard state:
/// the arc above the wall whose starting point has g as its closest
/// pericenter. Returns nullopt when no such arc exists.
std::optional<Arc> locate_arc(const Params& params, OrbitState state, const SearchOptions& options = {});

/// Number of wall crossings of the orbit with 0 < theta < pi, g taken literally.
std::size_t count_wall_intersections(const Params& params, OrbitState state, const SearchOptions& options = {});

/// The billiard map on orbit space: reflect the arc of `state` at its end.
/// Throws NoFurtherIntersection when the point is not a billiard state.
MapResult map_state(const Params& params, OrbitState state, const SearchOptions& options = {});

}  // namespace boltzmann
