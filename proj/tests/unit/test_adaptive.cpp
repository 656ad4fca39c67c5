#include <cmath>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "deckwalk/adaptive.hpp"
#include "deckwalk/errors.hpp"
#include "deckwalk/metrics.hpp"
#include "deckwalk/scenario.hpp"
#include "oracles.hpp"

using namespace deckwalk;

namespace {

const PdGains kGains = make_pd_gains();

AdaptiveConfig small_config(int n) {
  AdaptiveConfig c;
  c.order = n;
  return c;
}

}  // namespace

TEST(AdaptiveConfig, CovarianceBounds) {
  const AdaptiveConfig c;
  EXPECT_NEAR(c.mu_lower(), 1.6667e-3, 1e-7);
  EXPECT_NEAR(c.mu_upper(), 37.0156, 1e-4);
  EXPECT_NO_THROW(validate(c));
}

TEST(AdaptiveConfig, Validation) {
  AdaptiveConfig c;
  c.alpha = 1.0;
  EXPECT_THROW(validate(c), InvalidParameter);
  c = {};
  c.sigma = 0.0;
  EXPECT_THROW(validate(c), InvalidParameter);
  c = {};
  c.order = 0;
  EXPECT_THROW(validate(c), InvalidParameter);
  c = {};
  c.delta = -1e-6;
  EXPECT_THROW(validate(c), InvalidParameter);
  c = {};
  c.theta_bar = 0.0;
  EXPECT_THROW(validate(c), InvalidParameter);
}

TEST(AdaptiveConfig, OrderWarning) {
  EXPECT_FALSE(compensator_order_warning(small_config(20), 2).has_value());
  EXPECT_TRUE(compensator_order_warning(small_config(5), 2).has_value());
  EXPECT_FALSE(compensator_order_warning(small_config(6), 2).has_value());
}

TEST(Discretize, VanishingSamplePeriod) {
  AdaptiveConfig c = small_config(3);
  c.sample_period = 1e-9;
  const auto ops = discretize(c, kGains);
  EXPECT_LE((ops.A_d - Mat2::Identity()).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_LE(ops.B_d.cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Discretize, CompensatorTransition) {
  AdaptiveConfig c = small_config(3);
  const auto ops = discretize(c, kGains);
  const double st = c.sigma * c.sample_period;
  const double decay = std::exp(-st);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(ops.F_d(i, i), decay, 1e-15);
    for (int j = 0; j < i; ++j) EXPECT_EQ(ops.F_d(i, j), 0.0);
  }
  EXPECT_NEAR(ops.F_d(0, 1), decay * st, 1e-14);
  EXPECT_NEAR(ops.F_d(0, 2), decay * st * st / 2.0, 1e-14);
  const Eigen::MatrixXd ref = oracle::series_expm(ops.F * c.sample_period, 40);
  EXPECT_LE((ops.F_d - ref).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Discretize, MatchesSeriesOracle) {
  const AdaptiveConfig c;
  const auto ops = discretize(c, kGains);
  const double T = c.sample_period;
  EXPECT_LE((Eigen::MatrixXd(ops.A_d) - oracle::series_expm(kGains.A * T)).cwiseAbs().maxCoeff(),
            1e-12);
  EXPECT_LE((ops.F_d - oracle::series_expm(ops.F * T)).cwiseAbs().maxCoeff(), 1e-12);
  const MatX m = regressor_generator(c, kGains);
  EXPECT_LE((ops.Phi - oracle::series_expm(m * T)).cwiseAbs().maxCoeff(), 1e-12);
  // Block structure of the generator: [[A, B H], [0, F]].
  EXPECT_EQ(MatX(m.topLeftCorner(2, 2)), MatX(kGains.A));
  EXPECT_EQ(MatX(m.bottomRightCorner(c.order, c.order)), ops.F);
  EXPECT_EQ(MatX(m.topRightCorner(2, c.order)), MatX(kGains.B * ops.H));
}

TEST(Discretize, RegressorTransitionIsStable) {
  const auto ops = discretize(AdaptiveConfig{}, kGains);
  const Eigen::EigenSolver<MatX> eig(ops.Phi, false);
  EXPECT_LT(eig.eigenvalues().cwiseAbs().maxCoeff(), 1.0);
}

TEST(Observer, AtRestPassesErrorThrough) {
  const AdaptiveConfig c;
  const auto ops = discretize(c, kGains);
  auto s = AdaptiveState::initial(c);
  for (double e : {0.01, -0.3, 0.2}) EXPECT_EQ(observer_step(s, Vec2(e, 0.7), ops), e);
}

TEST(Observer, MatchedTrajectoryGivesZeroObservation) {
  const AdaptiveConfig c;
  const auto ops = discretize(c, kGains);
  auto s = AdaptiveState::initial(c);
  Vec2 e_hat = Vec2::Zero();
  for (int i = 0; i < 200; ++i) {
    s.v = 0.3 * std::sin(0.05 * i);
    const Vec2 e = ops.A_d * e_hat + ops.B_d * s.v;
    EXPECT_LE(std::abs(observer_step(s, e, ops)), 1e-15);
    e_hat = e;
  }
}

TEST(Adaptive, NullLoopStaysAtRest) {
  const AdaptiveConfig c;
  const auto ops = discretize(c, kGains);
  auto s = AdaptiveState::initial(c);
  for (int i = 0; i < 500; ++i) {
    const double v = adaptive_tick(s, Vec2::Zero(), ops, c);
    EXPECT_LE(std::abs(s.zeta), 1e-12);
    EXPECT_LE(std::abs(v), 1e-12);
  }
}

TEST(Compensator, UnforcedDecay) {
  AdaptiveConfig c = small_config(1);
  const auto ops = discretize(c, kGains);
  auto s = AdaptiveState::initial(c);
  s.eta(0) = 1.0;
  double prev = c.sigma;
  for (int i = 0; i < 50; ++i) {
    const double v = compensator_step(s, 0.7, ops);
    EXPECT_NEAR(v / prev, std::exp(-c.sigma * c.sample_period), 1e-12);
    prev = v;
  }
}

TEST(Compensator, UnitDcGain) {
  AdaptiveConfig c = small_config(4);
  const auto ops = discretize(c, kGains);
  auto s = AdaptiveState::initial(c);
  s.theta_hat(0) = 1.0;
  double v = 0.0;
  for (int i = 0; i < 3000; ++i) v = compensator_step(s, 1.0, ops);
  EXPECT_NEAR(v, 1.0, 1e-6);
}

TEST(Compensator, HigherChannelsAreCascadedLags) {
  // Channel k of v is sigma^k/(s+sigma)^k applied to theta_k zeta; DC gain 1 each.
  AdaptiveConfig c = small_config(3);
  const auto ops = discretize(c, kGains);
  auto s = AdaptiveState::initial(c);
  s.theta_hat(2) = 2.0;
  double v = 0.0;
  for (int i = 0; i < 5000; ++i) v = compensator_step(s, 0.5, ops);
  EXPECT_NEAR(v, 1.0, 1e-6);
}

TEST(Regressor, ZeroInputZeroOutput) {
  const AdaptiveConfig c;
  const auto ops = discretize(c, kGains);
  auto s = AdaptiveState::initial(c);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(regressor_step(s, 0.0, ops).norm(), 0.0);
}

TEST(Regressor, ImpulseResponseMatchesContinuousCascade) {
  const AdaptiveConfig c = small_config(4);
  const auto ops = discretize(c, kGains);
  const MatX m = regressor_generator(c, kGains);
  const int n = c.order;
  const double T = c.sample_period;
  auto s = AdaptiveState::initial(c);

  // Oracle: integrate z' = M z + e_{2+k} u(t), u = 1 on the first sample only.
  std::vector<Eigen::VectorXd> z(n, Eigen::VectorXd::Zero(n + 2));
  for (int j = 0; j < 60; ++j) {
    const double u = j == 0 ? 1.0 : 0.0;
    const auto& phi = regressor_step(s, u, ops);
    for (int k = 0; k < n; ++k) {
      EXPECT_NEAR(phi(k), z[k](0), 1e-8) << "sample " << j << " channel " << k;
      auto rhs = [&](double, const Eigen::VectorXd& x) {
        Eigen::VectorXd d = m * x;
        d(2 + k) += u;
        return d;
      };
      z[k] = oracle::rk4(rhs, z[k], 0.0, T, 50);
    }
  }
}

TEST(Rls, NoExcitation) {
  const AdaptiveConfig c = small_config(3);
  auto s = AdaptiveState::initial(c);
  s.theta_hat << 0.1, -0.2, 0.3;
  const VecX theta = s.theta_hat;
  const MatX p = s.P;
  rls_step(s, 0.5, c);
  EXPECT_EQ(s.theta_hat, theta);
  const MatX expected = p + c.beta * MatX::Identity(3, 3) + c.gamma * p - c.delta * p * p;
  EXPECT_LE((s.P - expected).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Rls, ScalarEstimateConverges) {
  const AdaptiveConfig c = small_config(1);
  auto s = AdaptiveState::initial(c);
  const double theta_star = 0.8;
  for (int i = 0; i < 2000; ++i) {
    s.phi(0) = 1.0;
    rls_step(s, theta_star, c);
  }
  EXPECT_NEAR(s.theta_hat(0), theta_star, 0.01 * theta_star);
  EXPECT_GE(s.P(0, 0), c.mu_lower() - 1e-9);
  EXPECT_LE(s.P(0, 0), c.mu_upper() + 1e-9);
}

TEST(Rls, ProjectionCapsNorm) {
  AdaptiveConfig c = small_config(2);
  c.theta_bar = 1.0;
  auto s = AdaptiveState::initial(c);
  for (int i = 0; i < 50; ++i) {
    s.phi << 1.0, 0.5;
    rls_step(s, 100.0, c);
    EXPECT_LE(s.theta_hat.norm(), c.theta_bar + 1e-12);
  }
  EXPECT_NEAR(s.theta_hat.norm(), 1.0, 1e-12);
}

TEST(Projection, Radial) {
  VecX v(2);
  v << 3.0, 4.0;
  EXPECT_EQ(project_radial(v, 10.0), v);
  const VecX p = project_radial(v, 1.0);
  EXPECT_NEAR(p.norm(), 1.0, 1e-15);
  EXPECT_NEAR(p(0) / p(1), 0.75, 1e-15);
}

TEST(Projection, TangentOnBoundary) {
  VecX theta(2);
  theta << 0.6, 0.8;
  MatX p(2, 2);
  p << 2.0, 0.3, 0.3, 1.0;
  VecX out(2);
  out << 1.0, 1.0;
  const VecX r = project_tangent(out, theta, p, 1.0);
  EXPECT_NEAR(theta.dot(r), 0.0, 1e-14);
  VecX in(2);
  in << -1.0, -0.2;
  EXPECT_EQ(project_tangent(in, theta, p, 1.0), in);
  EXPECT_EQ(project_tangent(out, 0.5 * theta, p, 1.0), out);
}

TEST(AdaptiveLoop, QuietOnStillGround) {
  const auto tr = run_scenario(builtin_scenario(1, Controller::Adaptive));
  for (const auto& r : tr.samples) EXPECT_LE(std::abs(r.v), 1e-9);
}

TEST(AdaptiveLoop, BeatsPdOnLateWindow) {
  auto msq = [](const SimTrace& tr) {
    double s = 0.0;
    int n = 0;
    for (const auto& r : tr.samples) {
      if (r.t >= 10.0) {
        s += (r.xd - r.x) * (r.xd - r.x);
        ++n;
      }
    }
    return s / n;
  };
  const auto pd = run_scenario(builtin_scenario(2, Controller::PdFeedForward));
  const auto ad = run_scenario(builtin_scenario(2, Controller::Adaptive));
  EXPECT_LT(msq(ad), msq(pd));
}

TEST(AdaptiveLoop, EstimateAndCovarianceStayBounded) {
  const AdaptiveConfig c;
  for (int id : {2, 3}) {
    const auto tr = run_scenario(builtin_scenario(id, Controller::Adaptive));
    double prev_max = INFINITY;
    for (const auto& r : tr.samples) {
      EXPECT_LE(r.theta_norm, c.theta_bar);
      EXPECT_GE(r.p_eig_min, c.mu_lower() - 1e-9);
      if (r.p_eig_max > c.mu_upper()) EXPECT_LE(r.p_eig_max, prev_max * (1.0 + 1e-12));
      prev_max = r.p_eig_max;
    }
  }
}

TEST(AdaptiveLoop, CovarianceEntersBandAndStays) {
  // Without excitation every direction follows p <- p + gamma p + beta - delta p^2,
  // whose fixed point is mu_U, so entry from P(0) = 1e4 I takes a long time.
  const AdaptiveConfig c;
  long oracle_steps = 0;
  for (double p = c.initial_covariance; p > c.mu_upper() + 1e-9; ++oracle_steps) {
    p += c.gamma * p + c.beta - c.delta * p * p;
  }
  EXPECT_GT(oracle_steps * c.sample_period, 60.0);
  AdaptiveController loop(c, make_pd_gains());
  long entry = -1;
  for (long k = 0; k < oracle_steps + 5000; ++k) {
    loop.tick(Vec2::Zero());
    const Eigen::SelfAdjointEigenSolver<MatX> eig(loop.state().P, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    ASSERT_GE(lo, c.mu_lower() - 1e-9) << k;
    if (entry < 0 && hi <= c.mu_upper() + 1e-9) entry = k + 1;
    if (entry >= 0) ASSERT_LE(hi, c.mu_upper() + 1e-9) << k;
  }
  // Near the fixed point p - mu_U shrinks by ~6e-5 per step, so roundoff moves
  // the crossing of the 1e-9 threshold by hundreds of steps.
  EXPECT_NEAR(static_cast<double>(entry), static_cast<double>(oracle_steps), 0.01 * oracle_steps);
}
