#include "deckwalk/adaptive.hpp"

#include <cmath>
#include <string>

#include "deckwalk/errors.hpp"

namespace deckwalk {

double AdaptiveConfig::mu_lower() const {
  const double d = gamma - alpha;
  return (d + std::sqrt(d * d + 4.0 * delta * beta)) / (2.0 * delta);
}

double AdaptiveConfig::mu_upper() const {
  return (gamma + std::sqrt(gamma * gamma + 4.0 * delta * beta)) / (2.0 * delta);
}

void validate(const AdaptiveConfig& c) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(c.sigma)) throw InvalidParameter("sigma must be positive");
  if (c.order < 1) throw InvalidParameter("compensator order must be at least 1");
  if (!positive(c.alpha) || !positive(c.beta) || !positive(c.gamma) || !positive(c.delta)) {
    throw InvalidParameter("EFRA rates alpha, beta, gamma, delta must be positive");
  }
  if (!positive(c.theta_bar)) throw InvalidParameter("theta_bar must be positive");
  if (!positive(c.sample_period)) throw InvalidParameter("sample period must be positive");
  if (!positive(c.initial_covariance)) {
    throw InvalidParameter("initial covariance scale must be positive");
  }
  const double lo = c.mu_lower();
  const double hi = c.mu_upper();
  if (!(lo > 0.0 && lo < hi && std::isfinite(hi))) {
    throw InvalidParameter("EFRA bounds must satisfy 0 < mu_L < mu_U < inf");
  }
  if (!((1.0 - c.alpha) * (1.0 - c.alpha) > c.gamma * c.gamma + 4.0 * c.beta * c.delta)) {
    throw InvalidParameter("EFRA rates violate (1 - alpha)^2 > gamma^2 + 4 beta delta");
  }
}

std::optional<std::string> compensator_order_warning(const AdaptiveConfig& config,
                                                     int sinusoid_count) {
  const int needed = 2 * sinusoid_count + 1;
  if (config.order > needed) return std::nullopt;
  return "compensator order " + std::to_string(config.order) + " does not exceed " +
         std::to_string(needed) + " (twice the " + std::to_string(sinusoid_count) +
         " disturbance sinusoids plus one)";
}

MatX regressor_generator(const AdaptiveConfig& config, const PdGains& gains) {
  const int n = config.order;
  MatX m = MatX::Zero(2 + n, 2 + n);
  m.topLeftCorner(2, 2) = gains.A;
  // B H has a single non-zero entry: B(1) * sigma in column 0 of the block.
  m(1, 2) = gains.B(1) * config.sigma;
  for (int i = 0; i < n; ++i) {
    m(2 + i, 2 + i) = -config.sigma;
    if (i + 1 < n) m(2 + i, 3 + i) = config.sigma;
  }
  return m;
}

DiscreteOperators discretize(const AdaptiveConfig& config, const PdGains& gains) {
  validate(config);
  const int n = config.order;
  const double T = config.sample_period;
  DiscreteOperators ops;

  ops.A_d = expm(gains.A * T);
  Eigen::FullPivLU<Mat2> a_lu(gains.A);
  if (!a_lu.isInvertible()) throw NumericalFailure("PD error matrix is singular");
  ops.B_d = a_lu.solve((ops.A_d - Mat2::Identity()) * gains.B);

  ops.F = MatX::Zero(n, n);
  ops.F.diagonal().setConstant(-config.sigma);
  if (n > 1) ops.F.diagonal(1).setConstant(config.sigma);
  ops.F_d = expm(ops.F * T);
  Eigen::FullPivLU<MatX> f_lu(ops.F);
  if (!f_lu.isInvertible()) throw NumericalFailure("compensator matrix is singular");
  ops.compensator_in = f_lu.solve(ops.F_d - MatX::Identity(n, n));

  ops.H = RowX::Zero(n);
  ops.H(0) = config.sigma;

  const MatX m = regressor_generator(config, gains);
  ops.Phi = expm(m * T);
  Eigen::FullPivLU<MatX> m_lu(m);
  if (!m_lu.isInvertible()) throw NumericalFailure("regressor generator is singular");
  ops.Psi = m_lu.solve(ops.Phi - MatX::Identity(n + 2, n + 2));
  if (!ops.Phi.allFinite() || !ops.Psi.allFinite()) {
    throw NumericalFailure("non-finite discretized regressor operators");
  }
  return ops;
}

AdaptiveState AdaptiveState::initial(const AdaptiveConfig& config) {
  const int n = config.order;
  AdaptiveState s;
  s.eta = VecX::Zero(n);
  s.regressor = MatX::Zero(n + 2, n);
  s.P = config.initial_covariance * MatX::Identity(n, n);
  s.theta_hat = VecX::Zero(n);
  s.phi = VecX::Zero(n);
  return s;
}

double observer_step(AdaptiveState& state, const Vec2& error, const DiscreteOperators& ops) {
  state.e_hat = ops.A_d * state.e_hat + ops.B_d * state.v;
  state.zeta = error(0) - state.e_hat(0);
  return state.zeta;
}

double compensator_step(AdaptiveState& state, double input, const DiscreteOperators& ops) {
  state.eta = ops.F_d * state.eta + ops.compensator_in * (state.theta_hat * input);
  state.v = ops.H.dot(state.eta);
  return state.v;
}

const VecX& regressor_step(AdaptiveState& state, double zeta, const DiscreteOperators& ops) {
  const int n = static_cast<int>(state.regressor.cols());
  state.phi = state.regressor.row(0).transpose();
  state.regressor = ops.Phi * state.regressor + zeta * ops.Psi.rightCols(n);
  return state.phi;
}

VecX project_radial(const VecX& candidate, double bound) {
  const double norm = candidate.norm();
  if (norm <= bound) return candidate;
  return candidate * (bound / norm);
}

VecX project_tangent(const VecX& direction, const VecX& theta, const MatX& P, double bound) {
  const double norm = theta.norm();
  const bool on_boundary = norm >= bound * (1.0 - 1e-12);
  if (!on_boundary || theta.dot(direction) <= 0.0) return direction;
  const VecX p_theta = P * theta;
  return direction - p_theta * (theta.dot(direction) / theta.dot(p_theta));
}

double rls_step(AdaptiveState& state, double zeta, const AdaptiveConfig& config) {
  const VecX p_phi = state.P * state.phi;
  const double denom = 1.0 + state.phi.dot(p_phi);
  state.eps = (zeta - state.phi.dot(state.theta_hat)) / denom;

  const VecX candidate = state.theta_hat + config.alpha * state.eps * p_phi;
  state.theta_hat = project_radial(candidate, config.theta_bar);

  MatX next = state.P - (config.alpha / denom) * (p_phi * p_phi.transpose());
  next.diagonal().array() += config.beta;
  next += config.gamma * state.P - config.delta * (state.P * state.P);
  state.P = 0.5 * (next + next.transpose());
  return state.eps;
}

double adaptive_tick(AdaptiveState& state, const Vec2& error, const DiscreteOperators& ops,
                     const AdaptiveConfig& config) {
  const double zeta = observer_step(state, error, ops);
  regressor_step(state, zeta, ops);
  rls_step(state, zeta, config);
  return compensator_step(state, -zeta, ops);
}

AdaptiveController::AdaptiveController(const AdaptiveConfig& config, const PdGains& gains)
    : config_(config), ops_(discretize(config, gains)), state_(AdaptiveState::initial(config)) {}

}  // namespace deckwalk
