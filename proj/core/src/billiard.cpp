#include "boltzmann/billiard.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "boltzmann/error.hpp"
#include "boltzmann/roots.hpp"

namespace boltzmann {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOnOrbitTol = 1e-8;
constexpr double kClipTol = 1e-12;

std::string fmt_state(OrbitState s, double theta) {
  std::ostringstream os;
  os.precision(17);
  os << "(g=" << s.g << ", C=" << s.C << ", theta=" << theta << ")";
  return os.str();
}

double wall_radius(const Params& params, double theta_star) {
  const double s = std::sin(theta_star);
  if (!(theta_star > 0.0 && theta_star < kPi) || !(s > 0.0))
    throw Error(ErrorCode::NotOnOrbit, "wall points need 0 < theta < pi");
  return params.gamma / s;
}

struct ConicCurve {
  ConicOrbit orbit;
  double radius(double theta) const {
    return orbit.p / (1.0 + orbit.e * std::cos(orbit.omega * (theta - orbit.g)));
  }
  double derivative(double theta) const { return radius_derivative(orbit, theta); }
};

struct CotesCurve {
  CotesOrbit orbit;
  double radius(double theta) const { return radius_at_angle(orbit, theta); }
  double derivative(double theta) const { return radius_derivative(orbit, theta); }
};

// First downward crossing of the wall after theta_start in the direction of
// motion. The arc never leaves 0 < theta < pi because the wall gap is -gamma
// at both ends, so that interval bounds the search.
template <class Curve>
WallPoint next_hit(const Curve& curve, double gamma, double C, double theta_start, std::size_t samples) {
  auto gap = [&](double th) { return curve.radius(th) * std::sin(th) - gamma; };
  const double dir = C > 0.0 ? 1.0 : -1.0;
  const double end = C > 0.0 ? kPi : 0.0;

  const double r0 = curve.radius(theta_start);
  const double slope = dir * (curve.derivative(theta_start) * std::sin(theta_start) + r0 * std::cos(theta_start));
  if (!(slope > 0.0))
    throw Error(ErrorCode::NoFurtherIntersection,
                "outgoing arc does not enter y > gamma " + fmt_state({0.0, C}, theta_start));

  double a = theta_start;
  double b = end;
  for (int depth = 0; depth < 4; ++depth) {
    const double step = (b - a) / static_cast<double>(samples);
    bool positive_seen = false;
    double x_prev = a;
    for (std::size_t i = 1; i <= samples; ++i) {
      const double x = i == samples ? b : a + step * static_cast<double>(i);
      const double fx = gap(x);
      if (fx > 0.0) {
        positive_seen = true;
      } else if (positive_seen) {
        const double theta = bisect_root(gap, x_prev, x);
        return {gamma / std::sin(theta), theta};
      } else {
        // The arc closes before the first sample: refine near the start.
        break;
      }
      x_prev = x;
    }
    if (positive_seen)
      throw Error(ErrorCode::RootIsolationFailure, "no sign change before the search boundary");
    b = a + step;
  }
  throw Error(ErrorCode::RootIsolationFailure,
              "arc too short to isolate from its starting point " + fmt_state({0.0, C}, theta_start));
}

ConicOrbit outgoing_conic(const Params& params, double C) {
  try {
    return conic_from_state(params, {0.0, C});
  } catch (const Error& err) {
    throw Error(ErrorCode::DegenerateReflection, std::string("outgoing orbit is not a bounded conic: ") + err.what());
  }
}

struct ConicReflection {
  OrbitState outgoing;
  double r_star;
  double r_prime_in;
};

ConicReflection conic_reflection(const Params& params, OrbitState in, double theta_star) {
  const ConicOrbit orbit1 = conic_from_state(params, in);
  const double r_star = wall_radius(params, theta_star);
  const double phase1 = orbit1.omega * (theta_star - orbit1.g);
  const double residual = orbit1.e * std::cos(phase1) - (orbit1.p - r_star) / r_star;
  if (!(std::abs(residual) < kOnOrbitTol))
    throw Error(ErrorCode::NotOnOrbit, "wall point is not on the incoming orbit " + fmt_state(in, theta_star));

  // Evaluate the slope at the wall radius rather than the orbit radius.
  const double r_prime1 = orbit1.e * orbit1.omega * std::sin(phase1) * r_star * r_star / orbit1.p;
  const ReflectedMomentum out = reflect_momentum(in.C, r_prime1, r_star, theta_star);

  const ConicOrbit orbit2 = outgoing_conic(params, out.C);
  if (!(orbit2.e > 0.0))
    throw Error(ErrorCode::DegenerateReflection, "outgoing orbit is circular " + fmt_state({0.0, out.C}, theta_star));
  if (!(orbit2.e < 1.0))
    throw Error(ErrorCode::DegenerateReflection, "outgoing orbit is unbounded " + fmt_state({0.0, out.C}, theta_star));

  // e2 cos(w2 (theta* - g2)) = (p2 - r*) / r*,  e2 sin(w2 (theta* - g2)) = p2 r2' / (w2 r*^2)
  const double cos_part = (orbit2.p - r_star) / r_star;
  const double sin_part = orbit2.p * out.r_prime / (orbit2.omega * r_star * r_star);
  const double arg = cos_part / orbit2.e;
  if (std::abs(arg) > 1.0 + kClipTol)
    throw Error(ErrorCode::DegenerateReflection, "pericenter equation has no real solution " + fmt_state(in, theta_star));
  // atan2 selects the principal phase, i.e. the closest pericenter, with the
  // branch sign(r2') * arccos(arg); exact apocenter hits resolve toward +theta.
  double phase2 = std::atan2(sin_part, cos_part);
  if (sin_part == 0.0 && cos_part < 0.0) phase2 = -kPi;
  return {{theta_star - phase2 / orbit2.omega, out.C}, r_star, r_prime1};
}

struct CotesReflection {
  OrbitState outgoing;
  double r_star;
  double r_prime_in;
};

CotesReflection cotes_reflection(const Params& params, OrbitState in, double theta_star) {
  const CotesOrbit orbit1 = cotes_from_state(params, in);
  const double r_star = wall_radius(params, theta_star);
  const double x1 = orbit1.omega_abs * (theta_star - orbit1.psi);
  const double residual = orbit1.k * std::cosh(x1) * r_star - 1.0;
  if (!(std::abs(residual) < kOnOrbitTol))
    throw Error(ErrorCode::NotOnOrbit, "wall point is not on the incoming Cotes orbit " + fmt_state(in, theta_star));
  const double r_prime1 = -orbit1.k * orbit1.omega_abs * std::sinh(x1) * r_star * r_star;
  const ReflectedMomentum out = reflect_momentum(in.C, r_prime1, r_star, theta_star);
  if (!(out.C * out.C + params.beta < 0.0))
    throw Error(ErrorCode::DegenerateReflection, "outgoing orbit leaves the Cotes cosh family");
  const CotesOrbit orbit2 = cotes_from_state(params, {0.0, out.C});

  const double cosh_part = 1.0 / (orbit2.k * r_star);
  if (cosh_part < 1.0 - kClipTol)
    throw Error(ErrorCode::DomainError, "wall point lies beyond the apocenter of every outgoing cosh orbit");
  // cosh(|w2|(theta* - psi2)) = 1/(k2 r*),  sinh(|w2|(theta* - psi2)) = -r2' / (k2 |w2| r*^2)
  const double sinh_part = -out.r_prime / (orbit2.k * orbit2.omega_abs * r_star * r_star);
  const double psi2 = theta_star - std::asinh(sinh_part) / orbit2.omega_abs;
  return {{psi2, out.C}, r_star, r_prime1};
}

template <class Curve>
std::vector<double> curve_roots(const Curve& curve, double gamma, std::size_t samples) {
  auto gap = [&](double th) { return curve.radius(th) * std::sin(th) - gamma; };
  return sampled_roots(gap, 0.0, kPi, samples);
}

std::vector<double> arc_roots(const Params& params, OrbitState state, std::size_t samples) {
  if (params.alpha == 0.0) return curve_roots(CotesCurve{cotes_from_state(params, state)}, params.gamma, samples);
  return curve_roots(ConicCurve{conic_from_state(params, state)}, params.gamma, samples);
}

}  // namespace

ReflectedMomentum reflect_momentum(double C_in, double r_prime_in, double r_star, double theta_star) {
  const double s = std::sin(theta_star);
  const double c = std::cos(theta_star);
  // Wall-normal velocity is proportional to r' sin + r cos.
  const double normal = r_prime_in * s + r_star * c;
  if (std::abs(normal) <= 1e-12 * (std::abs(r_prime_in) + r_star))
    throw Error(ErrorCode::TangentHit, "incoming velocity is tangent to the wall");
  // The tan-form of the slope equation multiplied through by cos^2, regular at pi/2.
  const double factor = r_star * (s * s - c * c) - 2.0 * r_prime_in * s * c;
  if (factor == 0.0 || C_in == 0.0)
    throw Error(ErrorCode::DegenerateReflection, "outgoing angular momentum vanishes");
  ReflectedMomentum out;
  out.C = C_in * factor / r_star;
  out.r_prime = (-r_star * r_prime_in * s * s - 2.0 * r_star * r_star * s * c + r_prime_in * r_star * c * c) / factor;
  return out;
}

double wall_gap(const Params& params, OrbitState state, double theta) {
  if (params.alpha == 0.0) return radius_at_angle(cotes_from_state(params, state), theta) * std::sin(theta) - params.gamma;
  const ConicOrbit orbit = conic_from_state(params, state);
  return orbit.p / (1.0 + orbit.e * std::cos(orbit.omega * (theta - orbit.g))) * std::sin(theta) - params.gamma;
}

OrbitState reflect(const Params& params, OrbitState state_in, double theta_star) {
  return conic_reflection(params, state_in, theta_star).outgoing;
}

WallPoint next_reflection(const Params& params, OrbitState state, double theta_start, const SearchOptions& options) {
  const ConicCurve curve{conic_from_state(params, state)};
  return next_hit(curve, params.gamma, state.C, theta_start, options.samples);
}

OrbitState cotes_reflect(const Params& params, OrbitState state_in, double theta_star) {
  return cotes_reflection(params, state_in, theta_star).outgoing;
}

WallPoint cotes_next_reflection(const Params& params, OrbitState state, double theta_start,
                                const SearchOptions& options) {
  const CotesCurve curve{cotes_from_state(params, state)};
  return next_hit(curve, params.gamma, state.C, theta_start, options.samples);
}

ReflectionEvent reflect_event(const Params& params, OrbitState state_in, double theta_star) {
  ReflectionEvent event;
  event.theta_star = theta_star;
  event.incoming = state_in;
  event.gamma = params.gamma;
  if (params.alpha == 0.0) {
    const CotesReflection refl = cotes_reflection(params, state_in, theta_star);
    event.r_star = refl.r_star;
    event.outgoing = refl.outgoing;
    event.r_prime_in = refl.r_prime_in;
    event.r_prime_out = radius_derivative(cotes_from_state(params, refl.outgoing), theta_star);
  } else {
    const ConicReflection refl = conic_reflection(params, state_in, theta_star);
    event.r_star = refl.r_star;
    event.outgoing = refl.outgoing;
    event.r_prime_in = refl.r_prime_in;
    event.r_prime_out = radius_derivative(conic_from_state(params, refl.outgoing), theta_star);
  }
  return event;
}

MapResult billiard_map(const Params& params, OrbitState state, double theta_current, const SearchOptions& options) {
  MapResult result;
  result.event = reflect_event(params, state, theta_current);
  result.next_state = result.event.outgoing;
  result.next_point = params.alpha == 0.0
                          ? cotes_next_reflection(params, result.next_state, theta_current, options)
                          : next_reflection(params, result.next_state, theta_current, options);
  return result;
}

std::optional<Arc> locate_arc(const Params& params, OrbitState state, const SearchOptions& options) {
  if (state.C == 0.0) return std::nullopt;
  double half_window = std::numeric_limits<double>::infinity();
  if (params.alpha > 0.0) {
    const double k2 = state.C * state.C + params.beta;
    if (!(k2 > 0.0)) return std::nullopt;
    if (params.alpha * params.alpha + 8.0 * params.energy * k2 < 0.0) return std::nullopt;
    // p / (1 - e) loses all precision on nearly radial orbits.
    if (apsis_radii(params, state.C).r_max <= params.gamma) return std::nullopt;
    half_window = kPi / std::sqrt(k2 / (state.C * state.C));
  } else if (params.alpha == 0.0) {
    if (!(state.C * state.C + params.beta < 0.0)) return std::nullopt;
  } else {
    return std::nullopt;
  }

  const double base = std::fmod(state.g, 2.0 * kPi);
  std::optional<Arc> best;
  double best_distance = std::numeric_limits<double>::infinity();
  for (int shift = -2; shift <= 2; ++shift) {
    const double g = base + 2.0 * kPi * shift;
    // Canonical representatives sit within half a precession period of a
    // starting point in (0, pi).
    if (std::isfinite(half_window) && (g <= -half_window || g >= kPi + half_window)) continue;
    if (!std::isfinite(half_window) && shift != 0) continue;
    const OrbitState candidate{g, state.C};
    const std::vector<double> roots = arc_roots(params, candidate, options.samples);
    for (std::size_t j = 0; j + 1 < roots.size(); j += 2) {
      const double lo = roots[j];
      const double hi = roots[j + 1];
      if (!(wall_gap(params, candidate, 0.5 * (lo + hi)) > 0.0)) continue;
      const double start = state.C > 0.0 ? lo : hi;
      const double end = state.C > 0.0 ? hi : lo;
      const double distance = std::abs(start - g);
      if (distance > half_window * (1.0 + 1e-12)) continue;
      if (distance < best_distance) {
        best_distance = distance;
        best = Arc{candidate, start, end};
      }
    }
  }
  return best;
}

std::size_t count_wall_intersections(const Params& params, OrbitState state, const SearchOptions& options) {
  return arc_roots(params, state, options.samples).size();
}

MapResult map_state(const Params& params, OrbitState state, const SearchOptions& options) {
  const std::optional<Arc> arc = locate_arc(params, state, options);
  if (!arc) throw Error(ErrorCode::NoFurtherIntersection, "state has no arc above the wall " + fmt_state(state, 0.0));
  return billiard_map(params, arc->state, arc->theta_end, options);
}

}  // namespace boltzmann
