#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "boltzmann/error.hpp"
#include "boltzmann/measure.hpp"
#include "boltzmann/sim.hpp"
#include "ode_oracle.hpp"

namespace {

using namespace boltzmann;

Params params_with_beta(double beta) {
  Params p;
  p.beta = beta;
  return p;
}

}  // namespace

TEST(JacobianDet, UnitDeterminantIntegrableCase) {
  const Params p;
  for (const auto& s : sample_billiard_states(p, 20, 1)) {
    const JacobianReport r = jacobian_det(p, s.state, s.theta_star, 1e-6);
    EXPECT_LT(std::abs(r.det - 1.0), 1e-5) << "g=" << s.state.g << " C=" << s.state.C;
    EXPECT_EQ(r.step_size, 1e-6);
    EXPECT_GE(r.condition_estimate, 1.0);
  }
}

TEST(JacobianDet, UnitDeterminantWithCentrifugalTerm) {
  for (double beta : {0.5, 2.4, 2.6}) {
    const Params p = params_with_beta(beta);
    for (const auto& s : sample_billiard_states(p, 30, 2)) {
      const JacobianReport r = jacobian_det(p, s.state, s.theta_star, 1e-6);
      EXPECT_LT(std::abs(r.det - 1.0), 1e-4);
    }
  }
}

TEST(JacobianDet, TruncationErrorShrinksWithTheStep) {
  const Params p = params_with_beta(0.5);
  const auto s = sample_billiard_states(p, 1, 7).front();
  const double coarse = std::abs(jacobian_det(p, s.state, s.theta_star, 1e-2).det - 1.0);
  const double mid = std::abs(jacobian_det(p, s.state, s.theta_star, 1e-3).det - 1.0);
  const double fine = std::abs(jacobian_det(p, s.state, s.theta_star, 1e-5).det - 1.0);
  EXPECT_LT(mid, coarse);
  EXPECT_LT(fine, mid + 1e-9);
  EXPECT_LT(fine, 1e-6);
}

TEST(JacobianDet, TwoStepDeterminantIsTheProduct) {
  int checked = 0;
  for (double beta : {0.0, 0.5, 2.4, 2.6}) {
    const Params p = params_with_beta(beta);
    for (const auto& s : sample_billiard_states(p, 20, 3)) {
      const JacobianReport one = jacobian_det(p, s.state, s.theta_star, 1e-6);
      const MapResult m = billiard_map(p, s.state, s.theta_star);
      JacobianReport next;
      JacobianReport two;
      try {
        next = jacobian_det(p, m.next_state, m.next_point.theta, 1e-6);
        two = jacobian_det(p, s.state, s.theta_star, 1e-6, 2);
      } catch (const Error&) {
        continue;
      }
      // Finite differences are only meaningful away from grazing hits.
      if (one.condition_estimate > 1e2 || next.condition_estimate > 1e2) continue;
      EXPECT_NEAR(two.det, one.det * next.det, 1e-4);
      ++checked;
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(JacobianDet, LargeStepLeavesTheNeighborhood) {
  const Params p = params_with_beta(2.6);
  const auto states = sample_billiard_states(p, 10, 4);
  int invalid = 0;
  for (const auto& s : states) {
    try {
      jacobian_det(p, s.state, s.theta_star, 0.5);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NeighborhoodInvalid);
      ++invalid;
    }
  }
  EXPECT_GT(invalid, 0);
}

TEST(ReflectionCheck, NormalIncidence) {
  ReflectionEvent ev;
  ev.theta_star = 0.9;
  ev.gamma = 0.5;
  ev.r_star = ev.gamma / std::sin(ev.theta_star);
  ev.r_prime_in = ev.r_star * std::tan(ev.theta_star);
  ev.r_prime_out = ev.r_prime_in;
  ev.incoming.C = 0.6;
  ev.outgoing.C = -0.6;
  EXPECT_LT(reflection_symplectic_check(ev), 1e-14);
}

TEST(ReflectionCheck, RandomEventsAndTamperedEvents) {
  for (double beta : {0.0, 0.5, 2.4, 2.6}) {
    const Params p = params_with_beta(beta);
    for (const auto& s : sample_billiard_states(p, 50, 5)) {
      ReflectionEvent ev = reflect_event(p, s.state, s.theta_star);
      EXPECT_LT(reflection_symplectic_check(ev), 1e-9);
      ev.outgoing.C += 1e-3;
      EXPECT_GT(reflection_symplectic_check(ev), 1e-4);
    }
  }
}

TEST(ReflectionCheck, EventVelocitiesMatchIntegratedDynamics) {
  const Params p = params_with_beta(2.4);
  for (const auto& s : sample_billiard_states(p, 5, 6)) {
    const ReflectionEvent ev = reflect_event(p, s.state, s.theta_star);
    const auto hit = oracle::integrate_map(p, s.state, s.theta_star);
    ASSERT_TRUE(hit.has_value());
    const double c = std::cos(ev.theta_star);
    const double sn = std::sin(ev.theta_star);
    const double r = ev.r_star;
    const double w_out = ev.outgoing.C / (r * r);
    EXPECT_NEAR(w_out * (ev.r_prime_out * c - r * sn), hit->after[2], 1e-8);
    EXPECT_NEAR(w_out * (ev.r_prime_out * sn + r * c), hit->after[3], 1e-8);
  }
}

TEST(Sampling, SeededAndReproducible) {
  const Params p = params_with_beta(0.5);
  const auto a = sample_billiard_states(p, 10, 99);
  const auto b = sample_billiard_states(p, 10, 99);
  const auto c = sample_billiard_states(p, 10, 100);
  ASSERT_EQ(a.size(), 10u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].state, b[i].state);
    EXPECT_EQ(a[i].theta_star, b[i].theta_star);
  }
  EXPECT_NE(a[0].state, c[0].state);
}

TEST(Sampling, UnitUniformRange) {
  EXPECT_EQ(unit_uniform(0), 0.0);
  EXPECT_LT(unit_uniform(~std::uint64_t{0}), 1.0);
  EXPECT_EQ(unit_uniform(std::uint64_t{1} << 63), 0.5);
}
