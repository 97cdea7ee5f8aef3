#include "ode_oracle.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <utility>

#include <boost/numeric/odeint.hpp>

namespace boltzmann::oracle {
namespace {

namespace odeint = boost::numeric::odeint;

constexpr double kTol = 1e-13;
constexpr double kMaxStep = 5e-3;

struct Rhs {
  double alpha;
  double beta;
  void operator()(const Phase& s, Phase& d, double /*t*/) const {
    const double r2 = s[0] * s[0] + s[1] * s[1];
    const double r = std::sqrt(r2);
    // acceleration = -dV/dr along r-hat, V = -alpha/(2r) + beta/(2r^2)
    const double radial = -alpha / (2.0 * r2) + beta / (r2 * r);
    d[0] = s[2];
    d[1] = s[3];
    d[2] = radial * s[0] / r;
    d[3] = radial * s[1] / r;
    d[4] = (s[0] * s[3] - s[1] * s[2]) / r2;
  }
};

double radius(const Phase& s) { return std::hypot(s[0], s[1]); }
double radial_velocity(const Phase& s) { return (s[0] * s[2] + s[1] * s[3]) / radius(s); }
double angular_momentum(const Phase& s) { return s[0] * s[3] - s[1] * s[2]; }

double radial_acceleration(const Params& p, const Phase& s) {
  const double r = radius(s);
  const double C = angular_momentum(s);
  return (C * C + p.beta) / (r * r * r) - p.alpha / (2.0 * r * r);
}

// Event value and acceptance test for a located zero.
struct Event {
  std::function<double(const Phase&)> value;
  std::function<bool(double before, double after)> crossing;
  std::function<bool(const Phase&)> accept = [](const Phase&) { return true; };
};

std::optional<std::pair<double, Phase>> integrate_until(const Params& params, Phase x, double direction, double t_max,
                                     const Event& event) {
  const Rhs rhs{params.alpha, params.beta};
  auto stepper = odeint::make_controlled(kTol, kTol, odeint::runge_kutta_dopri5<Phase>());
  odeint::runge_kutta_fehlberg78<Phase> fine;
  double t = 0.0;
  double dt = 1e-4 * direction;
  double e_prev = event.value(x);
  int failures = 0;
  while (std::abs(t) < t_max) {
    if (std::abs(dt) > kMaxStep) dt = kMaxStep * direction;
    const Phase x_old = x;
    const double t_old = t;
    if (stepper.try_step(rhs, x, t, dt) == odeint::fail) {
      if (++failures > 10000) return std::nullopt;
      continue;
    }
    if (radius(x) < 1e-4) return std::nullopt;
    const double e_new = event.value(x);
    if (event.crossing(e_prev, e_new)) {
      double lo = 0.0;
      double hi = t - t_old;
      Phase located = x;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        Phase xm;
        fine.do_step(rhs, x_old, t_old, xm, mid);
        if ((event.value(xm) < 0.0) == (e_prev < 0.0)) {
          lo = mid;
        } else {
          hi = mid;
        }
        located = xm;
      }
      Phase xf;
      fine.do_step(rhs, x_old, t_old, xf, 0.5 * (lo + hi));
      located = xf;
      if (event.accept(located)) return std::make_pair(t_old + 0.5 * (lo + hi), located);
    }
    e_prev = e_new;
  }
  return std::nullopt;
}

bool any_crossing(double a, double b) { return (a < 0.0) != (b < 0.0); }

double kepler_radial_period(const Params& p) {
  if (p.alpha <= 0.0) return 50.0;
  const double a = -p.alpha / (4.0 * p.energy);
  return 2.0 * std::numbers::pi * std::sqrt(a * a * a / (0.5 * p.alpha));
}

// Angle of the nearest apsis (pericenter for alpha > 0, apocenter for the
// Cotes case) reached forwards or backwards in time.
std::optional<double> nearest_apsis_angle(const Params& params, const Phase& start, double reference) {
  const bool want_min = params.alpha > 0.0;
  Event apsis;
  apsis.value = radial_velocity;
  apsis.crossing = any_crossing;
  apsis.accept = [&](const Phase& s) { return want_min ? radial_acceleration(params, s) > 0.0 : radial_acceleration(params, s) < 0.0; };
  const double t_max = 1.2 * kepler_radial_period(params);
  std::optional<double> best;
  for (double direction : {1.0, -1.0}) {
    const auto hit = integrate_until(params, start, direction, t_max, apsis);
    if (!hit) continue;
    const double angle = hit->second[4];
    if (!best || std::abs(angle - reference) < std::abs(*best - reference)) best = angle;
  }
  return best;
}

}  // namespace

Phase apsis_phase(const Params& params, OrbitState state) {
  const double C = state.C;
  double r = 0.0;
  if (params.alpha > 0.0) {
    // Smaller positive root of 2E r^2 + alpha r - (C^2 + beta) = 0.
    const double a = 2.0 * params.energy;
    const double b = params.alpha;
    const double c = -(C * C + params.beta);
    const double disc = std::max(0.0, b * b - 4.0 * a * c);
    const double q = -0.5 * (b + std::sqrt(disc));
    const double r1 = q / a;
    const double r2 = c / q;
    r = std::min(r1, r2);
  } else {
    r = std::sqrt((C * C + params.beta) / (2.0 * params.energy));
  }
  const double speed = C / r;
  return {r * std::cos(state.g), r * std::sin(state.g), -speed * std::sin(state.g), speed * std::cos(state.g), state.g};
}

Phase flow(const Params& params, Phase start, double duration) {
  const Rhs rhs{params.alpha, params.beta};
  auto stepper = odeint::make_controlled(kTol, kTol, odeint::runge_kutta_dopri5<Phase>());
  odeint::integrate_adaptive(stepper, rhs, start, 0.0, duration, duration > 0 ? 1e-4 : -1e-4);
  return start;
}

double half_radial_period(const Params& params, double C) {
  Event apo;
  apo.value = radial_velocity;
  apo.crossing = [](double a, double b) { return a > 0.0 && b <= 0.0; };
  const auto hit = integrate_until(params, apsis_phase(params, {0.0, C}), 1.0, 1e3, apo);
  return hit ? hit->first : std::nan("");
}

std::optional<OracleHit> integrate_map(const Params& params, OrbitState incoming, double theta_star) {
  OracleHit hit;
  Phase x = apsis_phase(params, incoming);

  // Leg 1: along the incoming orbit until the polar angle equals theta_star.
  if (theta_star != incoming.g) {
    const double direction = (incoming.C > 0.0 ? 1.0 : -1.0) * (theta_star > incoming.g ? 1.0 : -1.0);
    Event to_angle;
    to_angle.value = [theta_star](const Phase& s) { return s[4] - theta_star; };
    to_angle.crossing = any_crossing;
    const auto reached = integrate_until(params, x, direction, 50.0 * kepler_radial_period(params), to_angle);
    if (!reached) return std::nullopt;
    x = reached->second;
  }
  hit.before = x;

  // Leg 2: mirror in the wall.
  x[3] = -x[3];
  hit.after = x;
  hit.outgoing.C = angular_momentum(x);

  // Leg 3: first downward crossing of y = gamma.
  Event wall;
  wall.value = [gamma = params.gamma](const Phase& s) { return s[1] - gamma; };
  wall.crossing = [](double a, double b) { return a > 0.0 && b <= 0.0; };
  const auto next = integrate_until(params, x, 1.0, 50.0 * kepler_radial_period(params), wall);
  if (!next) return std::nullopt;
  hit.theta_next = next->second[4];
  hit.r_next = radius(next->second);

  const auto apsis = nearest_apsis_angle(params, hit.after, theta_star);
  if (!apsis) return std::nullopt;
  hit.outgoing.g = *apsis;
  return hit;
}

}  // namespace boltzmann::oracle
