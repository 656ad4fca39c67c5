#include "deckwalk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "deckwalk/certificate.hpp"
#include "deckwalk/fourier.hpp"
#include "deckwalk/metrics.hpp"
#include "deckwalk/scenario.hpp"

namespace deckwalk {

namespace {

struct Runs {
  std::map<std::pair<int, Controller>, SimTrace> traces;

  const SimTrace& get(int case_id, Controller c) {
    const auto key = std::make_pair(case_id, c);
    auto it = traces.find(key);
    if (it == traces.end()) it = traces.emplace(key, run_scenario(builtin_scenario(case_id, c))).first;
    return it->second;
  }
};

PropertyResult make(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok, std::move(detail)};
}

double max_abs_signal(const SimTrace& trace) {
  double m = 0.0;
  for (const auto& s : trace.samples) {
    for (double v : {s.x, s.xdot, s.xd, s.xd_dot, s.xc, s.xc_dot, s.e, s.e_dot, s.ec, s.ec_dot,
                     s.tau_cmd, s.v, s.zeta, s.theta_norm}) {
      m = std::max(m, std::abs(v));
    }
  }
  return m;
}

// Sandwich rule for the EFRA covariance started above mu_U: the lower bound
// holds throughout, the top eigenvalue never grows while above mu_U, and once
// inside the band it stays there.
bool covariance_ok(const SimTrace& trace, double lo, double hi, std::string& why) {
  constexpr double tol = 1e-9;
  bool entered = false;
  double prev_max = INFINITY;
  for (const auto& s : trace.samples) {
    if (s.p_eig_min < lo - tol) {
      why = fmt::format("min eig {:.3e} below mu_L at t={}", s.p_eig_min, s.t);
      return false;
    }
    if (s.p_eig_max <= hi + tol) entered = true;
    if (entered && s.p_eig_max > hi + tol) {
      why = fmt::format("max eig {:.3e} left the band at t={}", s.p_eig_max, s.t);
      return false;
    }
    if (!entered && s.p_eig_max > prev_max * (1.0 + 1e-12)) {
      why = fmt::format("max eig grew above mu_U at t={}", s.t);
      return false;
    }
    prev_max = s.p_eig_max;
  }
  return true;
}

double simpson_xi1(const GaitSpec& spec) {
  const int n = 20000;
  const double T = spec.step_period;
  const double h = T / n;
  double sum = 0.0;
  for (int j = 0; j <= n; ++j) {
    // Integrate over (-T/2, T/2) so the jump sits at the ends.
    const double s = -0.5 * T + j * h;
    const double f = desired_state_at_phase(spec, s).position * std::sin(2.0 * std::numbers::pi * s / T);
    const double w = (j == 0 || j == n) ? 1.0 : (j % 2 ? 4.0 : 2.0);
    sum += w * f;
  }
  return 2.0 / T * sum * h / 3.0;
}

}  // namespace

MatX series_expm(const MatX& m, int terms) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const MatX a = m / std::ldexp(1.0, squarings);
  MatX result = MatX::Identity(m.rows(), m.cols());
  MatX term = result;
  for (int k = 1; k < terms; ++k) {
    term = term * a / k;
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

std::vector<PropertyResult> run_verification(const VerifyOptions& options) {
  std::vector<PropertyResult> out;
  const GaitSpec spec;
  const auto planner = build_planner(spec);
  const auto gains = make_pd_gains();
  const AdaptiveConfig adaptive;
  Runs runs;
  const Controller both[] = {Controller::PdFeedForward, Controller::Adaptive};

  {
    const Vec2 ec0 = desired_initial_state(spec).vec();
    const auto seq = planner_error_sequence(planner, spec, ec0, 11);
    const double rho = planner.spectral_radius();
    const double decay = seq[10].norm() / seq[0].norm();
    const double ratio = std::pow(seq[10].norm() / seq[5].norm(), 1.0 / 5.0);
    const bool ok = decay <= 1e-3 && std::abs(ratio - rho) <= 0.1 * rho;
    out.push_back(make("planner_geometric_decay", ok,
                       fmt::format("10-step ratio {:.3e}, per-step {:.4f}, rho {:.4f}", decay,
                                   ratio, rho)));
  }
  {
    const Mat2 shift = planner.step_transition - Mat2::Identity();
    double worst = 0.0;
    for (int k = 1; k <= 30; ++k) {
      const Vec2 xd = desired_state(spec, spec.touchdown_time(k)).vec();
      worst = std::max(worst, (shift * xd - Vec2(spec.stride(), 0.0)).norm());
    }
    out.push_back(make("step_transition_identity", worst <= 1e-9, fmt::format("max {:.3e}", worst)));
  }
  {
    try {
      const auto hooked = build_planner(spec, LqrWeights{}, options.dare);
      const double r = dare_residual(hooked);
      out.push_back(make("riccati_residual", r <= 1e-9,
                         fmt::format("{:.3e} after {} iterations", r, hooked.iterations)));
    } catch (const NumericalFailure& err) {
      out.push_back(make("riccati_residual", false, err.what()));
    }
    const double l = lyapunov_residual(gains);
    out.push_back(make("lyapunov_residual", l <= 1e-10, fmt::format("{:.3e}", l)));
  }
  {
    double worst = 0.0;
    for (int c = 1; c <= 3; ++c) {
      for (auto ctrl : both) worst = std::max(worst, jump_consistency_check(runs.get(c, ctrl)).max_error_jump);
    }
    out.push_back(make("error_continuity", worst <= 1e-12, fmt::format("max jump {:.3e}", worst)));
  }
  {
    const auto& t2 = runs.get(2, Controller::PdFeedForward);
    const auto s2 = builtin_scenario(2);
    const auto cert = closed_loop_residual_check(gains, t2, s2.sim.surface, s2.sim.vertical, spec);
    const double e_end = std::abs(runs.get(1, Controller::PdFeedForward).samples.back().e);
    const bool ok = cert.applicable && cert.tail_inside && e_end <= 1e-4;
    out.push_back(make("residual_set_certificate", ok,
                       fmt::format("{}; case 1 |e(15)| {:.3e}", cert.note, e_end)));
  }
  {
    bool ok = true;
    std::string detail;
    for (int c : {2, 3}) {
      const double pd = compute_metrics(runs.get(c, Controller::PdFeedForward)).rmse;
      const double ad = compute_metrics(runs.get(c, Controller::Adaptive)).rmse;
      ok = ok && ad <= 0.67 * pd;
      detail += fmt::format("{}case {} ratio {:.3f}", detail.empty() ? "" : "; ", c, ad / pd);
    }
    out.push_back(make("adaptive_superiority", ok, detail));
  }
  {
    bool ok = true;
    std::string detail;
    for (int c : {1, 2}) {
      for (auto ctrl : both) {
        const double fit = compute_metrics(runs.get(c, ctrl)).fit;
        ok = ok && std::abs(fit - spec.desired_velocity) <= 0.01 * spec.desired_velocity;
        detail += fmt::format("{}case {} {} {:.5f}", detail.empty() ? "" : "; ", c, to_string(ctrl), fit);
      }
    }
    out.push_back(make("velocity_tracking", ok, detail));
  }
  {
    bool ok = true;
    std::string why;
    double theta = 0.0, signal = 0.0;
    for (int c = 1; c <= 3; ++c) {
      for (auto ctrl : both) {
        const auto& tr = runs.get(c, ctrl);
        for (const auto& s : tr.samples) theta = std::max(theta, s.theta_norm);
        signal = std::max(signal, max_abs_signal(tr));
        if (ctrl == Controller::Adaptive &&
            !covariance_ok(tr, adaptive.mu_lower(), adaptive.mu_upper(), why)) {
          ok = false;
        }
      }
    }
    ok = ok && theta <= adaptive.theta_bar && signal <= 1e3;
    out.push_back(make("boundedness", ok,
                       fmt::format("max |theta| {:.3f}, max signal {:.3e}{}", theta, signal,
                                   why.empty() ? "" : ", " + why)));
  }
  {
    const auto xi = fourier_amplitudes(spec, 1000);
    const double quad = simpson_xi1(spec);
    bool monotone = true;
    double prev = INFINITY;
    for (int n : {1, 5, 20, 100}) {
      const double err = fourier_reconstruction_check(spec, n).max_error;
      monotone = monotone && err < prev;
      prev = err;
    }
    double lo = INFINITY, hi = 0.0;
    for (int k = 100; k <= 1000; ++k) {
      const double v = k * std::abs(xi[k - 1]);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const bool stable = (hi - lo) <= 0.05 * hi;
    const bool ok = std::abs(quad - xi[0]) <= 1e-6 && monotone && stable;
    out.push_back(make("fourier_oracle", ok,
                       fmt::format("xi1 {:.7f} vs quadrature {:.7f}, monotone {}, k|xi_k| spread {:.2e}",
                                   xi[0], quad, monotone, (hi - lo) / hi)));
  }
  {
    const auto ops = discretize(adaptive, gains);
    const double T = adaptive.sample_period;
    const MatX m = regressor_generator(adaptive, gains);
    double worst = 0.0;
    worst = std::max(worst, (MatX(ops.A_d) - series_expm(MatX(gains.A) * T)).cwiseAbs().maxCoeff());
    worst = std::max(worst, (ops.F_d - series_expm(ops.F * T)).cwiseAbs().maxCoeff());
    worst = std::max(worst, (ops.Phi - series_expm(m * T)).cwiseAbs().maxCoeff());
    auto fine = builtin_scenario(2);
    fine.sim.substeps *= 2;
    const auto& coarse_end = runs.get(2, Controller::PdFeedForward).samples.back();
    const auto fine_end = run_scenario(fine).samples.back();
    const double drift = std::max(std::abs(coarse_end.x - fine_end.x),
                                  std::abs(coarse_end.xdot - fine_end.xdot));
    const bool ok = worst <= 1e-12 && drift < 1e-7;
    out.push_back(make("discretization_fidelity", ok,
                       fmt::format("series mismatch {:.3e}, substep halving {:.3e}", worst, drift)));
  }
  {
    const double pd = compute_metrics(runs.get(2, Controller::PdFeedForward)).trq;
    const double ad = compute_metrics(runs.get(2, Controller::Adaptive)).trq;
    bool open_ok = false;
    std::string open_detail;
    try {
      run_scenario(builtin_scenario(2, Controller::AnkleOff));
      open_detail = "open-loop run did not diverge";
    } catch (const DivergenceError& err) {
      const auto& tr = err.partial_trace();
      const auto& td = tr.touchdowns;
      const double e_end = std::hypot(tr.samples.back().e, tr.samples.back().e_dot);
      const double ec_ratio =
          td.size() >= 2 ? td.back().ec_after.norm() / td.front().ec_after.norm() : INFINITY;
      open_ok = e_end > 1.0 && ec_ratio < 0.1;
      open_detail = fmt::format("open loop diverged at t={:.2f} s with |e| {:.2e}, e^c ratio {:.2e}",
                                tr.samples.back().t, e_end, ec_ratio);
    }
    const bool ok = pd < spec.torque_limit && ad < spec.torque_limit && open_ok;
    out.push_back(make("torque_behaviour", ok,
                       fmt::format("case 2 TRQ pd_ff {:.2f}, adaptive {:.2f}; {}", pd, ad,
                                   open_detail)));
  }
  return out;
}

}  // namespace deckwalk
