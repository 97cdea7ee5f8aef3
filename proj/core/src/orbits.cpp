#include "boltzmann/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "boltzmann/error.hpp"
#include "boltzmann/quadrature.hpp"

namespace boltzmann {
namespace {

constexpr double kZeroTol = 1e-12;

std::string describe(const Params& p, double C) {
  std::ostringstream os;
  os.precision(17);
  os << "(alpha=" << p.alpha << ", beta=" << p.beta << ", E=" << p.energy << ", C=" << C << ")";
  return os.str();
}

bool near_zero(double x, double scale = 1.0) { return std::abs(x) <= kZeroTol * std::max(1.0, scale); }

double eccentricity_discriminant(const Params& params, double C) {
  return params.alpha * params.alpha + 8.0 * params.energy * (C * C + params.beta);
}

}  // namespace

std::string_view to_string(OrbitClass c) noexcept {
  switch (c) {
    case OrbitClass::PrecessingEllipse: return "PrecessingEllipse";
    case OrbitClass::OpenConic: return "OpenConic";
    case OrbitClass::RepulsiveHyperbolic: return "RepulsiveHyperbolic";
    case OrbitClass::ParabolicSpiral: return "ParabolicSpiral";
    case OrbitClass::BoundedSpiral: return "BoundedSpiral";
    case OrbitClass::UnboundedSpiral: return "UnboundedSpiral";
    case OrbitClass::AsymptoticSpiral: return "AsymptoticSpiral";
    case OrbitClass::Circle: return "Circle";
    case OrbitClass::CotesEpispiral: return "CotesEpispiral";
    case OrbitClass::CotesReciprocal: return "CotesReciprocal";
    case OrbitClass::CotesCosh: return "CotesCosh";
    case OrbitClass::CotesSinh: return "CotesSinh";
    case OrbitClass::CotesExp: return "CotesExp";
    case OrbitClass::StraightLine: return "StraightLine";
    case OrbitClass::NoOrbit: return "NoOrbit";
  }
  return "Unknown";
}

void validate_billiard_params(const Params& params) {
  if (!(params.gamma > 0.0)) throw Error(ErrorCode::DomainError, "wall offset gamma must be positive");
  if (!(params.energy < 0.0)) throw Error(ErrorCode::DomainError, "only bounded orbits (energy < 0) are supported");
  if (params.alpha < 0.0) throw Error(ErrorCode::DomainError, "repulsive alpha < 0 has no bounded billiard");
  if (params.alpha == 0.0 && !(params.beta < 0.0))
    throw Error(ErrorCode::DomainError, "alpha = 0 with energy < 0 requires C^2 + beta < 0, hence beta < 0");
  if (params.alpha > 0.0) {
    // Some C must give a real eccentricity with C^2 + beta > 0.
    const double c_sq_max = params.alpha * params.alpha / (-8.0 * params.energy) - params.beta;
    if (!(c_sq_max > 0.0))
      throw Error(ErrorCode::DomainError, "no angular momentum admits a bounded conic orbit: C^2 + beta <= 0 or "
                                          "alpha^2 + 8E(C^2 + beta) < 0 across the whole C range");
  }
}

ConicOrbit conic_from_state(const Params& params, OrbitState state) {
  const double C = state.C;
  if (!(params.alpha > 0.0)) throw Error(ErrorCode::DomainError, "conic orbits need alpha > 0 " + describe(params, C));
  if (C == 0.0) throw Error(ErrorCode::DomainError, "angular momentum must be nonzero " + describe(params, C));
  const double k2 = C * C + params.beta;
  if (!(k2 > 0.0)) throw Error(ErrorCode::DomainError, "C^2 + beta <= 0 is not a conic " + describe(params, C));
  double disc = eccentricity_discriminant(params, C);
  if (disc < 0.0) {
    if (disc > -kZeroTol * params.alpha * params.alpha) {
      disc = 0.0;
    } else {
      throw Error(ErrorCode::EccentricityError, "alpha^2 + 8E(C^2 + beta) < 0 " + describe(params, C));
    }
  }
  ConicOrbit orbit;
  orbit.p = 2.0 * k2 / params.alpha;
  orbit.omega = std::sqrt(k2 / (C * C));
  orbit.e = std::sqrt(disc) / params.alpha;
  orbit.g = state.g;
  return orbit;
}

double radius_at_angle(const ConicOrbit& orbit, double theta) {
  const double denom = 1.0 + orbit.e * std::cos(orbit.omega * (theta - orbit.g));
  if (!(denom > 0.0)) {
    std::ostringstream os;
    os << "theta=" << theta << " lies outside the reachable sector of the orbit";
    throw Error(ErrorCode::DomainError, os.str());
  }
  return orbit.p / denom;
}

double radius_derivative(const ConicOrbit& orbit, double theta) {
  const double phase = orbit.omega * (theta - orbit.g);
  const double denom = 1.0 + orbit.e * std::cos(phase);
  return orbit.p * orbit.e * orbit.omega * std::sin(phase) / (denom * denom);
}

ApsisRadii apsis_radii(const Params& params, double C) {
  // Shares the preconditions and errors of the conic construction.
  (void)conic_from_state(params, {0.0, C});
  const double disc = std::max(0.0, eccentricity_discriminant(params, C));
  const double root = std::sqrt(disc);
  const double four_e = 4.0 * params.energy;
  return {(-params.alpha + root) / four_e, (-params.alpha - root) / four_e};
}

CotesOrbit cotes_from_state(const Params& params, OrbitState state) {
  const double C = state.C;
  if (params.alpha != 0.0) throw Error(ErrorCode::DomainError, "Cotes orbits need alpha = 0 " + describe(params, C));
  if (!(params.energy < 0.0)) throw Error(ErrorCode::DomainError, "Cotes billiard needs energy < 0 " + describe(params, C));
  if (C == 0.0) throw Error(ErrorCode::DomainError, "angular momentum must be nonzero " + describe(params, C));
  const double k2 = C * C + params.beta;
  if (!(k2 < 0.0)) throw Error(ErrorCode::DomainError, "bounded Cotes orbits need C^2 + beta < 0 " + describe(params, C));
  CotesOrbit orbit;
  // omega^2 C^2 = C^2 + beta, so 2E / (omega^2 C^2) = 2E / (C^2 + beta) > 0.
  orbit.k = std::sqrt(2.0 * params.energy / k2);
  orbit.omega_abs = std::sqrt(-k2) / std::abs(C);
  orbit.psi = state.g;
  return orbit;
}

double radius_at_angle(const CotesOrbit& orbit, double theta) {
  return 1.0 / (orbit.k * std::cosh(orbit.omega_abs * (theta - orbit.psi)));
}

double radius_derivative(const CotesOrbit& orbit, double theta) {
  const double x = orbit.omega_abs * (theta - orbit.psi);
  const double r = 1.0 / (orbit.k * std::cosh(x));
  return -orbit.k * orbit.omega_abs * std::sinh(x) * r * r;
}

OrbitClass classify_orbit(const Params& params, double C, double aux) {
  const double alpha = params.alpha;
  const double k2 = C * C + params.beta;
  const double scale = C * C + std::abs(params.beta);

  if (alpha == 0.0) {
    // Free motion: rho'' + rho = 0.
    if (near_zero(params.beta)) return OrbitClass::StraightLine;
    if (near_zero(k2, scale)) return OrbitClass::CotesReciprocal;
    if (k2 > 0.0) return OrbitClass::CotesEpispiral;
    if (near_zero(aux)) return OrbitClass::CotesExp;
    return aux < 0.0 ? OrbitClass::CotesCosh : OrbitClass::CotesSinh;
  }

  if (near_zero(k2, scale)) return OrbitClass::ParabolicSpiral;

  const double e = aux;
  if (k2 > 0.0) {
    if (alpha > 0.0) {
      if (near_zero(e)) return OrbitClass::Circle;
      if (e < 0.0) return OrbitClass::NoOrbit;
      return e < 1.0 ? OrbitClass::PrecessingEllipse : OrbitClass::OpenConic;
    }
    return e > 1.0 ? OrbitClass::RepulsiveHyperbolic : OrbitClass::NoOrbit;
  }

  // C^2 + beta < 0: r = p / (1 + e cosh(...)).
  if (alpha < 0.0) {
    if (e >= 0.0) return OrbitClass::NoOrbit;
    return e < -1.0 ? OrbitClass::BoundedSpiral : OrbitClass::UnboundedSpiral;
  }
  if (near_zero(e)) return OrbitClass::Circle;
  if (e > 0.0) return OrbitClass::BoundedSpiral;
  return e > -1.0 ? OrbitClass::AsymptoticSpiral : OrbitClass::NoOrbit;
}

double time_from_pericenter(const Params& params, OrbitState state, double r) {
  if (!(params.energy < 0.0)) throw Error(ErrorCode::DomainError, "time from pericenter needs a bounded orbit");
  const ApsisRadii apsis = apsis_radii(params, state.C);
  const double span = apsis.r_max - apsis.r_min;
  const double tol = 1e-12 * apsis.r_max;
  if (r < apsis.r_min - tol || r > apsis.r_max + tol) {
    std::ostringstream os;
    os.precision(17);
    os << "r=" << r << " outside [" << apsis.r_min << ", " << apsis.r_max << "]";
    throw Error(ErrorCode::DomainError, os.str());
  }
  if (span <= 0.0) return 0.0;
  const double s = std::clamp((r - apsis.r_min) / span, 0.0, 1.0);
  const double u_end = std::asin(std::sqrt(s));
  if (u_end == 0.0) return 0.0;

  // r = r_min + span sin^2 u turns 2(E + U) - C^2/r^2 = -2E (r - r_min)(r_max - r) / r^2
  // into a smooth integrand 2 r(u) / sqrt(-2E).
  static const GaussLegendre rule = gauss_legendre(48);
  const double half = 0.5 * u_end;
  const double inv_speed = 2.0 / std::sqrt(-2.0 * params.energy);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = half * (rule.nodes[i] + 1.0);
    const double su = std::sin(u);
    sum += rule.weights[i] * (apsis.r_min + span * su * su);
  }
  return inv_speed * half * sum;
}

double kinetic_energy_at(const Params& params, double r) {
  return params.energy + params.alpha / (2.0 * r) - params.beta / (2.0 * r * r);
}

}  // namespace boltzmann
