#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "boltzmann/error.hpp"
#include "boltzmann/orbits.hpp"
#include "ode_oracle.hpp"

namespace {

using namespace boltzmann;
constexpr double kPi = std::numbers::pi;

Params params_with_beta(double beta) {
  Params p;
  p.beta = beta;
  return p;
}

// Largest |C| with a real eccentricity.
double c_limit(const Params& p) { return std::sqrt(p.alpha * p.alpha / (-8.0 * p.energy) - p.beta); }

double energy_at(const Params& p, double C, double r, double r_dot) {
  return 0.5 * (r_dot * r_dot + C * C / (r * r)) - p.alpha / (2.0 * r) + p.beta / (2.0 * r * r);
}

template <class F>
void expect_error(ErrorCode code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(ConicFromState, ElementsReproduceEnergyAtBothApsides) {
  for (double beta : {0.0, 0.5, 2.4, 2.6}) {
    const Params p = params_with_beta(beta);
    for (double frac : {-0.97, -0.4, 0.3, 0.75, 0.9}) {
      const double C = frac * c_limit(p);
      const ConicOrbit o = conic_from_state(p, {0.7, C});
      EXPECT_NEAR(o.omega, std::sqrt((C * C + beta) / (C * C)), 1e-15);
      const double r_min = o.p / (1.0 + o.e);
      const double r_max = o.p / (1.0 - o.e);
      EXPECT_NEAR(energy_at(p, C, r_min, 0.0), p.energy, 1e-12);
      EXPECT_NEAR(energy_at(p, C, r_max, 0.0), p.energy, 1e-12);
      EXPECT_DOUBLE_EQ(radius_at_angle(o, 0.7), r_min);
    }
  }
}

TEST(ConicFromState, RadiusMatchesIntegratedTrajectory) {
  for (double beta : {0.0, 0.5, 2.6}) {
    const Params p = params_with_beta(beta);
    for (double frac : {-0.6, 0.4, 0.95}) {
      const double C = frac * c_limit(p);
      const OrbitState s{0.4, C};
      const ConicOrbit o = conic_from_state(p, s);
      for (double t : {0.3, 1.7, 4.0, 9.5}) {
        const oracle::Phase x = oracle::flow(p, oracle::apsis_phase(p, s), t);
        const double r = std::hypot(x[0], x[1]);
        EXPECT_NEAR(radius_at_angle(o, x[4]), r, 1e-9) << "beta=" << beta << " C=" << C << " t=" << t;
        // dr/dtheta = r_dot / theta_dot
        const double r_dot = (x[0] * x[2] + x[1] * x[3]) / r;
        EXPECT_NEAR(radius_derivative(o, x[4]), r_dot * r * r / C, 1e-8);
      }
    }
  }
}

TEST(ConicFromState, RejectsZeroAngularMomentum) {
  expect_error(ErrorCode::DomainError, [] { conic_from_state(Params{}, {0.0, 0.0}); });
}

TEST(ConicFromState, RejectsImaginaryEccentricity) {
  // alpha^2 + 8E(C^2 + beta) < 0 once |C| exceeds 2 at alpha = 4, E = -0.5.
  expect_error(ErrorCode::EccentricityError, [] { conic_from_state(Params{}, {0.0, 2.1}); });
}

TEST(ConicFromState, RejectsNonConicCases) {
  Params p;
  p.beta = -1.0;
  expect_error(ErrorCode::DomainError, [&] { conic_from_state(p, {0.0, 0.5}); });
  p.alpha = 0.0;
  expect_error(ErrorCode::DomainError, [&] { conic_from_state(p, {0.0, 0.5}); });
}

TEST(RadiusAtAngle, RejectsAnglesOutsideTheSector) {
  ConicOrbit open{1.0, 1.5, 1.0, 0.0};
  expect_error(ErrorCode::DomainError, [&] { radius_at_angle(open, kPi); });
}

TEST(ApsisRadii, RootsOfTheRadialEnergyEquation) {
  for (double beta : {0.0, 2.4}) {
    const Params p = params_with_beta(beta);
    for (double frac : {0.15, 0.6, -0.99}) {
      const double C = frac * c_limit(p);
      const ApsisRadii a = apsis_radii(p, C);
      EXPECT_LT(a.r_min, a.r_max);
      for (double r : {a.r_min, a.r_max}) {
        EXPECT_NEAR(2.0 * p.energy * r * r + p.alpha * r - (C * C + beta), 0.0, 1e-12);
      }
    }
  }
}

TEST(CotesOrbit, RadiusMatchesIntegratedTrajectory) {
  Params p;
  p.alpha = 0.0;
  p.beta = -2.0;
  for (double C : {-1.1, 0.6}) {
    const OrbitState s{1.0, C};
    const CotesOrbit o = cotes_from_state(p, s);
    EXPECT_NEAR(radius_at_angle(o, 1.0), std::sqrt((C * C + p.beta) / (2.0 * p.energy)), 1e-15);
    for (double t : {0.2, 0.8, -0.5}) {
      const oracle::Phase x = oracle::flow(p, oracle::apsis_phase(p, s), t);
      EXPECT_NEAR(radius_at_angle(o, x[4]), std::hypot(x[0], x[1]), 1e-9);
    }
  }
}

TEST(CotesOrbit, RequiresNegativeCSquaredPlusBeta) {
  Params p;
  p.alpha = 0.0;
  p.beta = -1.0;
  expect_error(ErrorCode::DomainError, [&] { cotes_from_state(p, {0.0, 1.5}); });
  expect_error(ErrorCode::DomainError, [&] { cotes_from_state(p, {0.0, 0.0}); });
}

TEST(ClassifyOrbit, CaseTable) {
  Params p;
  EXPECT_EQ(classify_orbit(p, 1.0, 0.5), OrbitClass::PrecessingEllipse);
  EXPECT_EQ(classify_orbit(p, 1.0, 0.0), OrbitClass::Circle);
  EXPECT_EQ(classify_orbit(p, 1.0, 1.0), OrbitClass::OpenConic);
  p.beta = -1.0;
  EXPECT_EQ(classify_orbit(p, 1.0, 0.3), OrbitClass::ParabolicSpiral);
  EXPECT_EQ(classify_orbit(p, 0.5, 0.3), OrbitClass::BoundedSpiral);
  EXPECT_EQ(classify_orbit(p, 0.5, -0.5), OrbitClass::AsymptoticSpiral);
  EXPECT_EQ(classify_orbit(p, 0.5, -1.5), OrbitClass::NoOrbit);
  p.alpha = -1.0;
  p.beta = 0.0;
  EXPECT_EQ(classify_orbit(p, 1.0, 1.5), OrbitClass::RepulsiveHyperbolic);
  EXPECT_EQ(classify_orbit(p, 1.0, 0.5), OrbitClass::NoOrbit);
  p.beta = -2.0;
  EXPECT_EQ(classify_orbit(p, 1.0, -1.5), OrbitClass::BoundedSpiral);
  EXPECT_EQ(classify_orbit(p, 1.0, -0.5), OrbitClass::UnboundedSpiral);
  p.alpha = 0.0;
  p.beta = 0.0;
  EXPECT_EQ(classify_orbit(p, 1.0, 0.0), OrbitClass::StraightLine);
  p.beta = -1.0;
  EXPECT_EQ(classify_orbit(p, 1.0, 0.0), OrbitClass::CotesReciprocal);
  EXPECT_EQ(classify_orbit(p, 2.0, 0.0), OrbitClass::CotesEpispiral);
  EXPECT_EQ(classify_orbit(p, 0.5, -1.0), OrbitClass::CotesCosh);
  EXPECT_EQ(classify_orbit(p, 0.5, 1.0), OrbitClass::CotesSinh);
  EXPECT_EQ(classify_orbit(p, 0.5, 0.0), OrbitClass::CotesExp);
}

TEST(TimeFromPericenter, HalfPeriodMatchesIntegratedFlow) {
  // The radial period of -alpha/(2r) + (C^2 + beta)/(2r^2) depends on the
  // energy only: semi-major axis a = alpha / (-4E) = 2, period 2 pi a^1.5 / sqrt(alpha/2).
  for (double beta : {0.0, 0.5, 2.6}) {
    const Params p = params_with_beta(beta);
    for (double C : {0.3, 1.0}) {
      const ApsisRadii a = apsis_radii(p, C);
      const double t = time_from_pericenter(p, {0.0, C}, a.r_max);
      EXPECT_NEAR(t, oracle::half_radial_period(p, C), 1e-9);
      EXPECT_NEAR(t, 2.0 * kPi, 1e-12);
    }
  }
}

TEST(TimeFromPericenter, FlowForThatTimeReachesTheRadius) {
  const Params p = params_with_beta(0.5);
  const OrbitState s{0.0, 0.8};
  const ApsisRadii a = apsis_radii(p, s.C);
  for (double frac : {0.1, 0.5, 0.9}) {
    const double r = a.r_min + frac * (a.r_max - a.r_min);
    const double t = time_from_pericenter(p, s, r);
    const oracle::Phase x = oracle::flow(p, oracle::apsis_phase(p, s), t);
    EXPECT_NEAR(std::hypot(x[0], x[1]), r, 1e-9);
  }
  EXPECT_EQ(time_from_pericenter(p, s, a.r_min), 0.0);
  expect_error(ErrorCode::DomainError, [&] { time_from_pericenter(p, s, a.r_max * 1.01); });
}

TEST(ValidateBilliardParams, DomainChecks) {
  EXPECT_NO_THROW(validate_billiard_params(Params{}));
  Params p;
  p.gamma = 0.0;
  expect_error(ErrorCode::DomainError, [&] { validate_billiard_params(p); });
  p = Params{};
  p.energy = 0.1;
  expect_error(ErrorCode::DomainError, [&] { validate_billiard_params(p); });
  p = Params{};
  p.beta = 4.5;  // C^2 + beta > 4 = alpha^2 / (-8E) for every C
  expect_error(ErrorCode::DomainError, [&] { validate_billiard_params(p); });
  p = Params{};
  p.alpha = 0.0;
  expect_error(ErrorCode::DomainError, [&] { validate_billiard_params(p); });
  p.beta = -1.0;
  EXPECT_NO_THROW(validate_billiard_params(p));
}

TEST(KineticEnergy, EnergyConservation) {
  const Params p = params_with_beta(0.5);
  for (double r : {0.3, 1.0, 2.5}) {
    EXPECT_DOUBLE_EQ(kinetic_energy_at(p, r) - p.alpha / (2.0 * r) + p.beta / (2.0 * r * r), p.energy);
  }
}
