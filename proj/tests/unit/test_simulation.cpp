#include <cmath>
#include <cstring>

#include <gtest/gtest.h>

#include "deckwalk/errors.hpp"
#include "deckwalk/metrics.hpp"
#include "deckwalk/scenario.hpp"
#include "deckwalk/simulation.hpp"

using namespace deckwalk;

namespace {

bool identical(const SimTrace& a, const SimTrace& b) {
  if (a.samples.size() != b.samples.size()) return false;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const auto& x = a.samples[i];
    const auto& y = b.samples[i];
    const double xs[] = {x.t, x.x, x.xdot, x.xc, x.e, x.tau_cmd, x.v, x.zeta, x.theta_norm, x.x_s0c};
    const double ys[] = {y.t, y.x, y.xdot, y.xc, y.e, y.tau_cmd, y.v, y.zeta, y.theta_norm, y.x_s0c};
    if (std::memcmp(xs, ys, sizeof xs) != 0 || x.touchdown != y.touchdown) return false;
  }
  return true;
}

}  // namespace

TEST(Simulation, SampleCountAndTouchdownGrid) {
  const auto tr = run_scenario(builtin_scenario(1));
  ASSERT_EQ(tr.samples.size(), 7501u);
  ASSERT_EQ(tr.touchdowns.size(), 30u);
  int flagged = 0;
  for (std::size_t i = 0; i < tr.samples.size(); ++i) {
    const bool expected = i >= 125 && (i - 125) % 250 == 0;
    EXPECT_EQ(tr.samples[i].touchdown, expected) << i;
    flagged += tr.samples[i].touchdown;
  }
  EXPECT_EQ(flagged, 30);
  for (const auto& ev : tr.touchdowns) {
    EXPECT_NEAR(ev.t, (ev.index - 0.5) * 0.5, 1e-12);
    EXPECT_EQ(tr.samples[ev.sample].t, ev.t);
  }
}

TEST(Simulation, InitialConditions) {
  const auto tr = run_scenario(builtin_scenario(2));
  const auto& s0 = tr.samples.front();
  EXPECT_EQ(s0.x, 0.0);
  EXPECT_EQ(s0.xdot, 0.0);
  EXPECT_EQ(s0.xc, 0.0);
  EXPECT_EQ(s0.xd, 0.0);
  EXPECT_NEAR(s0.xd_dot, 0.17484, 1e-5);
}

TEST(Simulation, JumpConsistency) {
  for (int id : {1, 2, 3}) {
    for (auto c : {Controller::PdFeedForward, Controller::Adaptive}) {
      const auto tr = run_scenario(builtin_scenario(id, c));
      const auto rep = jump_consistency_check(tr);
      EXPECT_EQ(rep.touchdowns, 30);
      EXPECT_LE(rep.max_error_jump, 1e-12);
      EXPECT_LE(rep.max_commanded_deviation, 1e-12);
      EXPECT_LE(rep.max_desired_deviation, 1e-12);
    }
  }
}

TEST(Simulation, TouchdownErrorsFollowPlanner) {
  const auto s = builtin_scenario(2);
  const auto tr = run_scenario(s);
  const auto planner = build_planner(s.gait, s.lqr);
  const auto seq = planner_error_sequence(planner, s.gait, tr.ec_initial, 30);
  for (std::size_t k = 0; k < seq.size(); ++k) {
    EXPECT_LE((tr.touchdowns[k].ec_after - seq[k]).norm(), 1e-12) << k;
  }
}

TEST(Simulation, StillGroundTracksVelocity) {
  const auto pd = run_scenario(builtin_scenario(1, Controller::PdFeedForward));
  const auto ad = run_scenario(builtin_scenario(1, Controller::Adaptive));
  const auto mp = compute_metrics(pd);
  const auto ma = compute_metrics(ad);
  EXPECT_NEAR(mp.fit, 0.2, 0.002);
  EXPECT_NEAR(ma.fit, 0.2, 0.002);
  // No disturbance: both errors sit at roundoff and the adaptive loop never acts.
  EXPECT_LE(ma.rmse, mp.rmse);
  EXPECT_LE(mp.rmse, 1e-10);
}

TEST(Simulation, AnkleOffLeavesContinuousPhaseUncontrolled) {
  for (int id : {1, 2}) {
    SimTrace tr;
    try {
      tr = run_scenario(builtin_scenario(id, Controller::AnkleOff));
    } catch (const DivergenceError& e) {
      tr = e.partial_trace();
    }
    ASSERT_GE(tr.touchdowns.size(), 4u);
    const double ec_first = tr.touchdowns[1].ec_after.norm();
    const double ec_last = tr.touchdowns.back().ec_after.norm();
    EXPECT_LT(ec_last, 0.1 * ec_first) << id;
    const auto& end = tr.samples.back();
    EXPECT_GT(std::hypot(end.e, end.e_dot), 1.0) << id;
    for (const auto& r : tr.samples) EXPECT_EQ(r.tau_cmd, 0.0);
  }
}

TEST(Simulation, Deterministic) {
  const auto s = builtin_scenario(3, Controller::Adaptive);
  EXPECT_TRUE(identical(run_scenario(s), run_scenario(s)));
}

TEST(Simulation, SeededNoise) {
  auto s = builtin_scenario(2);
  s.sim.noise_stddev = 1e-4;
  s.sim.seed = 5;
  const auto a = run_scenario(s);
  const auto b = run_scenario(s);
  s.sim.seed = 6;
  const auto c = run_scenario(s);
  EXPECT_TRUE(identical(a, b));
  EXPECT_FALSE(identical(a, c));
}

TEST(Simulation, SubstepHalvingConverged) {
  for (auto ctrl : {Controller::PdFeedForward, Controller::Adaptive}) {
    auto s = builtin_scenario(2, ctrl);
    const auto coarse = run_scenario(s).samples.back();
    s.sim.substeps = 8;
    const auto fine = run_scenario(s).samples.back();
    EXPECT_LT(std::abs(coarse.x - fine.x), 1e-7);
    EXPECT_LT(std::abs(coarse.xdot - fine.xdot), 1e-7);
  }
}

TEST(Simulation, LipInvariantWithoutTorque) {
  auto s = builtin_scenario(1, Controller::AnkleOff);
  s.sim.duration = 0.24;  // before the first touchdown
  s.sim.initial_state = {0.01, -0.02};
  const auto tr = run_scenario(s);
  const double lam2 = s.gait.lambda() * s.gait.lambda();
  const auto inv = [&](const TraceSample& r) { return r.xdot * r.xdot - lam2 * r.x * r.x; };
  const double ref = inv(tr.samples.front());
  for (const auto& r : tr.samples) EXPECT_NEAR(inv(r), ref, 1e-8);
  EXPECT_TRUE(tr.touchdowns.empty());
}

TEST(Simulation, TinyTorqueLimitDiverges) {
  auto s = builtin_scenario(2);
  s.gait.torque_limit = 0.001;
  try {
    run_scenario(s);
    FAIL() << "expected divergence";
  } catch (const DivergenceError& e) {
    EXPECT_FALSE(e.partial_trace().samples.empty());
    EXPECT_LT(e.partial_trace().samples.size(), 7501u);
  }
}

TEST(Simulation, CommandedAndAppliedTorque) {
  auto s = builtin_scenario(3);
  s.gait.torque_limit = 5.0;
  SimTrace tr;
  try {
    tr = run_scenario(s);
  } catch (const DivergenceError& e) {
    tr = e.partial_trace();
  }
  bool clipped = false;
  for (const auto& r : tr.samples) {
    EXPECT_LE(std::abs(r.tau_applied), 5.0);
    if (std::abs(r.tau_cmd) > 5.0) {
      clipped = true;
      EXPECT_EQ(std::abs(r.tau_applied), 5.0);
    }
  }
  EXPECT_TRUE(clipped);
}

TEST(Simulation, RejectsMisalignedSampling) {
  auto s = builtin_scenario(1);
  s.sim.sample_rate = 333.0;
  EXPECT_THROW(run_scenario(s), InvalidParameter);
  s = builtin_scenario(1);
  s.sim.substeps = 0;
  EXPECT_THROW(run_scenario(s), InvalidParameter);
}

TEST(Simulation, ControllerNames) {
  EXPECT_EQ(parse_controller("PD_FF"), Controller::PdFeedForward);
  EXPECT_EQ(parse_controller("adaptive"), Controller::Adaptive);
  EXPECT_EQ(parse_controller("open-loop-ankle-off"), Controller::AnkleOff);
  EXPECT_THROW(parse_controller("ht_lip"), InvalidParameter);
  EXPECT_EQ(to_string(Controller::AnkleOff), "ankle_off");
}

TEST(Simulation, CompensatorOrderWarningRecorded) {
  auto s = builtin_scenario(2, Controller::Adaptive);
  s.adaptive.order = 4;
  EXPECT_FALSE(run_scenario(s).warnings.empty());
  EXPECT_TRUE(run_scenario(builtin_scenario(2, Controller::Adaptive)).warnings.empty());
}
