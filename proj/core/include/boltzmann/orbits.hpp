#pragma once

#include <string_view>

namespace boltzmann {

/// Physical configuration: potential -alpha/(2r) + beta/(2r^2), total
/// energy, and the reflecting wall y = gamma.
struct Params {
  double alpha = 4.0;
  double beta = 0.0;
  double energy = -0.5;
  double gamma = 0.5;

  friend bool operator==(const Params&, const Params&) = default;
};

/// Throws DomainError unless gamma > 0 and the parameters describe a bounded
/// billiard this library can iterate (alpha > 0 or alpha == 0, energy < 0).
void validate_billiard_params(const Params& params);

/// A point of the reduced phase space. `g` is the argument of pericenter
/// (apocenter for Cotes orbits), `C` the angular momentum.
struct OrbitState {
  double g = 0.0;
  double C = 0.0;

  friend bool operator==(const OrbitState&, const OrbitState&) = default;
};

/// r(theta) = p / (1 + e cos(omega (theta - g)))
struct ConicOrbit {
  double p = 0.0;
  double e = 0.0;
  double omega = 1.0;
  double g = 0.0;
};

/// 1/r(theta) = k cosh(|omega| (theta - psi))
struct CotesOrbit {
  double k = 0.0;
  double omega_abs = 0.0;
  double psi = 0.0;
};

enum class OrbitClass {
  PrecessingEllipse,
  OpenConic,
  RepulsiveHyperbolic,
  ParabolicSpiral,
  BoundedSpiral,
  UnboundedSpiral,
  AsymptoticSpiral,
  Circle,
  CotesEpispiral,
  CotesReciprocal,
  CotesCosh,
  CotesSinh,
  CotesExp,
  StraightLine,
  NoOrbit,
};

std::string_view to_string(OrbitClass c) noexcept;

ConicOrbit conic_from_state(const Params& params, OrbitState state);

/// Throws DomainError outside the reachable sector of the orbit.
double radius_at_angle(const ConicOrbit& orbit, double theta);
double radius_derivative(const ConicOrbit& orbit, double theta);

struct ApsisRadii {
  double r_min = 0.0;
  double r_max = 0.0;
};

ApsisRadii apsis_radii(const Params& params, double C);

CotesOrbit cotes_from_state(const Params& params, OrbitState state);
double radius_at_angle(const CotesOrbit& orbit, double theta);
double radius_derivative(const CotesOrbit& orbit, double theta);

/// Case table of the orbit family. `aux` is the eccentricity-like constant
/// e for alpha != 0 (p/(1 + e cos ...) form) and the first integral h of the
/// Clairaut equation for alpha == 0.
OrbitClass classify_orbit(const Params& params, double C, double aux);

/// Time elapsed from the pericenter passage to radius r along a bounded
/// conic arc, i.e. the canonical coordinate conjugate to the energy.
double time_from_pericenter(const Params& params, OrbitState state, double r);

/// Specific kinetic energy (v^2 / 2) at radius r, from energy conservation.
double kinetic_energy_at(const Params& params, double r);

}  // namespace boltzmann
