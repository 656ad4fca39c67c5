#include <cmath>

#include <gtest/gtest.h>

#include "deckwalk/errors.hpp"
#include "deckwalk/gait.hpp"
#include "oracles.hpp"

using namespace deckwalk;

namespace {

const GaitSpec kSpec = make_gait_spec(0.5, 0.2, 0.74, 9.81, 32.0, 40.0);

Eigen::VectorXd lip_rhs(double lambda, const Eigen::VectorXd& x) {
  Eigen::VectorXd d(2);
  d << x(1), lambda * lambda * x(0);
  return d;
}

}  // namespace

TEST(GaitSpec, LambdaFromGravityAndHeight) {
  EXPECT_NEAR(kSpec.lambda(), 3.64098, 1e-5);
  const auto unit = make_gait_spec(1.0, 0.0, 9.81, 9.81, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(unit.lambda(), 1.0);
}

TEST(GaitSpec, LambdaTracksEditedFields) {
  GaitSpec s = kSpec;
  s.nominal_height = s.gravity;
  EXPECT_DOUBLE_EQ(s.lambda(), 1.0);
}

TEST(GaitSpec, RejectsInvalidInputs) {
  EXPECT_THROW(make_gait_spec(0.5, 0.2, -1.0, 9.81, 32.0, 40.0), InvalidParameter);
  EXPECT_THROW(make_gait_spec(0.0, 0.2, 0.74, 9.81, 32.0, 40.0), InvalidParameter);
  EXPECT_THROW(make_gait_spec(0.5, -0.2, 0.74, 9.81, 32.0, 40.0), InvalidParameter);
  EXPECT_THROW(make_gait_spec(0.5, 0.2, 0.74, 9.81, 0.0, 40.0), InvalidParameter);
  EXPECT_THROW(make_gait_spec(0.5, 0.2, 0.74, 9.81, 32.0, 0.0), InvalidParameter);
  EXPECT_THROW(make_gait_spec(0.5, 0.2, 0.74, NAN, 32.0, 40.0), InvalidParameter);
}

TEST(GaitSpec, TouchdownSchedule) {
  EXPECT_DOUBLE_EQ(kSpec.touchdown_time(1), 0.25);
  EXPECT_DOUBLE_EQ(kSpec.touchdown_time(4), 1.75);
}

TEST(DesiredProfile, InitialState) {
  const auto x0 = desired_initial_state(kSpec);
  EXPECT_EQ(x0.position, 0.0);
  EXPECT_NEAR(x0.velocity, 0.17484, 1e-5);

  const auto rest = desired_initial_state(make_gait_spec(0.5, 0.0, 0.74, 9.81, 32.0, 40.0));
  EXPECT_EQ(rest.velocity, 0.0);

  // sinh(a) ~ a for a short period, so the initial velocity tends to v_d.
  const auto fast = desired_initial_state(make_gait_spec(1e-4, 0.2, 0.74, 9.81, 32.0, 40.0));
  EXPECT_NEAR(fast.velocity, 0.2, 1e-8);
}

TEST(DesiredProfile, StepAverageVelocityMatchesCommand) {
  // Integrate the pendulum numerically over one step from the post-touchdown state.
  const auto post = desired_state(kSpec, kSpec.touchdown_time(3)).vec();
  const double lam = kSpec.lambda();
  const auto end = oracle::rk4([&](double, const Eigen::VectorXd& x) { return lip_rhs(lam, x); },
                               Eigen::VectorXd(post), 0.0, kSpec.step_period, 5000);
  EXPECT_NEAR((end(0) - post(0)) / kSpec.step_period, kSpec.desired_velocity, 1e-9);
}

TEST(PropagateProfile, IdentityAtZero) {
  const PendulumState s{0.03, -0.1};
  EXPECT_EQ(propagate_profile(s, 0.0, kSpec), s);
  EXPECT_THROW(propagate_profile(s, -0.1, kSpec), InvalidParameter);
}

TEST(PropagateProfile, StepTransitionMatchesSeries) {
  const Mat2 as = step_transition(kSpec);
  Eigen::Matrix2d gen;
  gen << 0.0, 1.0, kSpec.lambda() * kSpec.lambda(), 0.0;
  const Eigen::MatrixXd ref = oracle::series_expm(gen * kSpec.step_period, 40);
  EXPECT_LE((as - ref).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_NEAR(as(0, 0), 3.16842, 1e-5);
  EXPECT_NEAR(as(0, 1), 0.82573, 1e-5);
  EXPECT_NEAR(as(1, 0), 10.94652, 1e-5);
  EXPECT_NEAR(as(1, 1), 3.16842, 1e-5);
}

TEST(PropagateProfile, MatchesRk4OverOneStep) {
  const PendulumState s{-0.05, 0.18};
  const double lam = kSpec.lambda();
  const auto ref = oracle::rk4([&](double, const Eigen::VectorXd& x) { return lip_rhs(lam, x); },
                               Eigen::VectorXd(s.vec()), 0.0, kSpec.step_period, 4000);
  const auto got = propagate_profile(s, kSpec.step_period, kSpec).vec();
  EXPECT_LE((got - ref).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(PropagateProfile, PeriodicUnderStrideJumps) {
  const auto start = desired_state(kSpec, kSpec.touchdown_time(1));
  auto s = start;
  for (int k = 0; k < 5; ++k) {
    s = touchdown_jump(propagate_profile(s, kSpec.step_period, kSpec), kSpec.stride());
    EXPECT_NEAR(s.position, start.position, 1e-9);
    EXPECT_NEAR(s.velocity, start.velocity, 1e-9);
  }
}

TEST(TouchdownJump, ShiftsPositionOnly) {
  const auto s = touchdown_jump({0.05, 0.18}, 0.1);
  EXPECT_NEAR(s.position, -0.05, 1e-15);
  EXPECT_EQ(s.velocity, 0.18);
  EXPECT_EQ(touchdown_jump({0.05, 0.18}, 0.0), (PendulumState{0.05, 0.18}));
}

TEST(DesiredProfile, JumpAtTouchdownIsStride) {
  for (int k = 1; k <= 30; ++k) {
    const double tk = kSpec.touchdown_time(k);
    const auto pre = desired_state_at_phase(kSpec, 0.5 * kSpec.step_period);
    const auto post = desired_state(kSpec, tk);
    EXPECT_NEAR(pre.position - post.position, kSpec.stride(), 1e-12);
    EXPECT_NEAR(pre.velocity, post.velocity, 1e-12);
    // Left limit from the time-based evaluator.
    const auto left = desired_state(kSpec, tk - 1e-9);
    EXPECT_NEAR(left.position, pre.position, 1e-9);
  }
}

TEST(DesiredProfile, PostTouchdownStateIsPeriodic) {
  const auto first = desired_state(kSpec, kSpec.touchdown_time(1));
  for (int k = 2; k <= 30; ++k) {
    const auto s = desired_state(kSpec, kSpec.touchdown_time(k));
    EXPECT_NEAR(s.position, first.position, 1e-9);
    EXPECT_NEAR(s.velocity, first.velocity, 1e-9);
  }
}

TEST(DesiredProfile, StepTransitionIdentity) {
  const Mat2 shift = step_transition(kSpec) - Mat2::Identity();
  for (int k = 1; k <= 30; ++k) {
    const Vec2 r = shift * desired_state(kSpec, kSpec.touchdown_time(k)).vec();
    EXPECT_NEAR(r(0), kSpec.stride(), 1e-9);
    EXPECT_NEAR(r(1), 0.0, 1e-9);
  }
}

TEST(DesiredProfile, StartsAtInitialState) {
  const auto s = desired_state(kSpec, 0.0);
  const auto x0 = desired_initial_state(kSpec);
  EXPECT_NEAR(s.position, x0.position, 1e-15);
  EXPECT_NEAR(s.velocity, x0.velocity, 1e-15);
}
