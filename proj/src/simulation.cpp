#include "deckwalk/simulation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

namespace deckwalk {

namespace {

int rounded_ratio(double num, double den, const char* what) {
  const double ratio = num / den;
  const double nearest = std::round(ratio);
  if (nearest < 1.0 || std::abs(ratio - nearest) > 1e-9 * std::max(1.0, nearest)) {
    throw InvalidParameter(std::string(what) + " is not an integer number of samples");
  }
  return static_cast<int>(nearest);
}

Vec2 rk4_step(const Vec2& x, double t, double h, double tau, const SimConfig& config,
              const GaitSpec& spec) {
  auto f = [&](double tt, const Vec2& s) {
    return plant_rhs(PendulumState::from(s), tt, tau, config.surface, config.vertical, spec);
  };
  const Vec2 k1 = f(t, x);
  const Vec2 k2 = f(t + 0.5 * h, x + 0.5 * h * k1);
  const Vec2 k3 = f(t + 0.5 * h, x + 0.5 * h * k2);
  const Vec2 k4 = f(t + h, x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

std::string_view to_string(Controller c) {
  switch (c) {
    case Controller::PdFeedForward:
      return "pd_ff";
    case Controller::Adaptive:
      return "adaptive";
    case Controller::AnkleOff:
      return "ankle_off";
  }
  return "unknown";
}

Controller parse_controller(std::string_view name) {
  std::string key;
  for (char ch : name) {
    key += ch == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  if (key == "pd_ff" || key == "pd" || key == "pdff") return Controller::PdFeedForward;
  if (key == "adaptive") return Controller::Adaptive;
  if (key == "ankle_off" || key == "open_loop_ankle_off" || key == "off") {
    return Controller::AnkleOff;
  }
  throw InvalidParameter("unknown controller '" + std::string(name) +
                         "' (expected pd_ff, adaptive or ankle_off)");
}

int SimConfig::sample_count() const {
  return static_cast<int>(std::llround(duration * sample_rate)) + 1;
}

void validate(const SimConfig& config, const GaitSpec& spec) {
  if (!(config.duration > 0.0) || !std::isfinite(config.duration)) {
    throw InvalidParameter("duration must be positive");
  }
  if (!(config.sample_rate > 0.0) || !std::isfinite(config.sample_rate)) {
    throw InvalidParameter("sample rate must be positive");
  }
  if (config.substeps < 1) throw InvalidParameter("substeps must be at least 1");
  if (!(config.divergence_limit > 0.0)) throw InvalidParameter("divergence limit must be positive");
  if (!(config.noise_stddev >= 0.0)) throw InvalidParameter("noise stddev must be non-negative");
  rounded_ratio(0.5 * spec.step_period, config.sample_period(), "half the step period");
  rounded_ratio(config.duration, config.sample_period(), "duration");
  make_vertical_regulation(config.vertical.nominal_height, config.vertical.wobble_amplitude,
                           config.vertical.wobble_frequency);
}

SimTrace run_simulation(const SimConfig& config, const GaitSpec& spec, const PlannerGains& planner,
                        const PdGains& gains, const AdaptiveConfig& adaptive) {
  validate(config, spec);
  const double dt = config.sample_period();
  const int half = rounded_ratio(0.5 * spec.step_period, dt, "half the step period");
  const int per_step = 2 * half;
  const int n_samples = config.sample_count();
  const double h = dt / config.substeps;

  std::optional<AdaptiveController> loop;
  if (config.controller == Controller::Adaptive) {
    AdaptiveConfig cfg = adaptive;
    cfg.sample_period = dt;
    loop.emplace(cfg, gains);
  }

  SimTrace trace;
  trace.controller = config.controller;
  trace.sample_period = dt;
  trace.spec = spec;
  trace.samples.reserve(n_samples);
  if (loop) {
    if (const auto q = sinusoid_count(config.surface)) {
      if (auto w = compensator_order_warning(loop->config(), *q)) trace.warnings.push_back(*w);
    }
  }

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> noise(0.0, config.noise_stddev > 0.0 ? config.noise_stddev : 1.0);

  const Mat2 sample_flow = profile_transition(spec, dt);
  Vec2 x = config.initial_state.vec();
  Vec2 xc = x;
  Vec2 ec_prev = desired_state_at_phase(spec, 0.0).vec() - xc;
  trace.ec_initial = ec_prev;
  double offset = 0.0;

  for (int i = 0; i < n_samples; ++i) {
    const double t = i * dt;
    const int phase_index = (i + half) % per_step;
    const bool touchdown = i >= half && phase_index == 0;

    TraceSample row;
    row.t = t;
    row.height = config.vertical.height(t);
    const Vec2 xd =
        touchdown ? desired_state_at_phase(spec, 0.5 * spec.step_period).vec()
                  : desired_state_at_phase(spec, phase_index * dt - 0.5 * spec.step_period).vec();
    row.x = x(0);
    row.xdot = x(1);
    row.xd = xd(0);
    row.xd_dot = xd(1);
    row.xc = xc(0);
    row.xc_dot = xc(1);
    const Vec2 e_pre = xc - x;
    row.e = e_pre(0);
    row.e_dot = e_pre(1);
    row.ec = xd(0) - xc(0);
    row.ec_dot = xd(1) - xc(1);
    row.offset = offset;
    row.x_s0c = offset + x(0);
    row.touchdown = touchdown;

    if (touchdown) {
      TouchdownEvent ev;
      ev.index = static_cast<int>(trace.touchdowns.size()) + 1;
      ev.sample = i;
      ev.t = t;
      ev.step = step_length(planner, ec_prev, spec);
      ev.e_before = e_pre;
      ev.ec_before = xd - xc;
      ev.xd_before = xd;
      ev.xd_after = desired_state_at_phase(spec, -0.5 * spec.step_period).vec();
      xc(0) -= ev.step;
      x(0) -= ev.step;
      offset += ev.step;
      ev.e_after = xc - x;
      ev.ec_after = ev.xd_after - xc;
      ec_prev = ev.ec_after;
      row.step = ev.step;
      if (std::abs(ev.step) > kStepWarningThreshold) ++trace.long_steps;
      trace.touchdowns.push_back(ev);
    }

    Vec2 e_meas = xc - x;
    if (config.noise_stddev > 0.0) {
      e_meas(0) += noise(rng);
      e_meas(1) += noise(rng);
    }

    double v = 0.0;
    if (loop) {
      v = loop->tick(e_meas);
      const auto& st = loop->state();
      row.zeta = st.zeta;
      row.theta_norm = st.theta_hat.norm();
      Eigen::SelfAdjointEigenSolver<MatX> eig(st.P, Eigen::EigenvaluesOnly);
      row.p_eig_min = eig.eigenvalues().minCoeff();
      row.p_eig_max = eig.eigenvalues().maxCoeff();
    }
    row.v = v;

    double tau = 0.0;
    if (config.controller != Controller::AnkleOff) {
      tau = ankle_torque(gains, e_meas, PendulumState::from(xc), row.height, v, spec);
    }
    row.tau_cmd = tau;
    row.tau_applied = config.saturate ? std::clamp(tau, -spec.torque_limit, spec.torque_limit) : tau;
    trace.samples.push_back(row);

    if (i + 1 == n_samples) break;

    for (int j = 0; j < config.substeps; ++j) {
      x = rk4_step(x, t + j * h, h, row.tau_applied, config, spec);
    }
    xc = sample_flow * xc;

    if (!x.allFinite() || std::abs(x(0)) > config.divergence_limit ||
        std::abs(x(1)) > config.divergence_limit) {
      const double t_fail = t + dt;
      throw DivergenceError("plant state diverged at t = " + std::to_string(t_fail) + " s",
                            std::move(trace));
    }
  }
  return trace;
}

JumpReport jump_consistency_check(const SimTrace& trace) {
  JumpReport report;
  const double stride = trace.spec.stride();
  for (const auto& ev : trace.touchdowns) {
    report.max_error_jump = std::max(report.max_error_jump, (ev.e_after - ev.e_before).norm());
    const double dec = ev.ec_after(0) - ev.ec_before(0);
    report.max_commanded_deviation =
        std::max(report.max_commanded_deviation, std::abs(dec - (ev.step - stride)));
    const double dxd = ev.xd_after(0) - ev.xd_before(0);
    report.max_desired_deviation = std::max(report.max_desired_deviation, std::abs(dxd + stride));
    ++report.touchdowns;
  }
  return report;
}

}  // namespace deckwalk
