#pragma once

#include <optional>
#include <string>

#include "deckwalk/ankle.hpp"
#include "deckwalk/linalg.hpp"

namespace deckwalk {

/// Tuning of the adaptive disturbance-rejection loop. The EFRA rates are the
/// discrete (per-sample) values.
struct AdaptiveConfig {
  double sigma = 10.0;  // compensator bandwidth [rad/s]
  int order = 20;       // n_phi
  double alpha = 0.6;
  double beta = 1e-3;
  double gamma = 1e-5;
  double delta = 1e-6;
  double theta_bar = 100.0;
  double sample_period = 1.0 / 500.0;
  double initial_covariance = 1e4;  // P(0) = initial_covariance * I

  /// Lower EFRA covariance bound mu_L.
  double mu_lower() const;
  /// Upper EFRA covariance bound mu_U.
  double mu_upper() const;
};

/// Throws InvalidParameter unless the rates are positive, 0 < mu_L < mu_U and
/// (1 - alpha)^2 > gamma^2 + 4 beta delta.
void validate(const AdaptiveConfig& config);

/// Warning text when the compensator order does not exceed twice the number of
/// disturbance sinusoids plus one.
std::optional<std::string> compensator_order_warning(const AdaptiveConfig& config,
                                                     int sinusoid_count);

/// Zero-order-hold operators of the observer, compensator and regressor filter.
struct DiscreteOperators {
  Mat2 A_d;             // exp(A T)
  Vec2 B_d;             // A^-1 (A_d - I) B
  MatX F;               // sigma (U - I)
  MatX F_d;             // exp(F T)
  MatX compensator_in;  // F^-1 (F_d - I), ZOH input map of (F, I)
  RowX H;               // sigma [1, 0, ..., 0]
  MatX Phi;             // exp(M T), M = [[A, B H], [0, F]]
  MatX Psi;             // M^-1 (Phi - I)
};

DiscreteOperators discretize(const AdaptiveConfig& config, const PdGains& gains);

/// Block generator M = [[A, B H], [0, F]] of the regressor filter.
MatX regressor_generator(const AdaptiveConfig& config, const PdGains& gains);

struct AdaptiveState {
  Vec2 e_hat = Vec2::Zero();
  VecX eta;
  MatX regressor;  // stacked [X; Y], (2 + n) x n
  MatX P;
  VecX theta_hat;
  VecX phi;
  double zeta = 0.0;
  double v = 0.0;
  double eps = 0.0;

  static AdaptiveState initial(const AdaptiveConfig& config);

  auto X() const { return regressor.topRows(2); }
  auto Y() const { return regressor.bottomRows(regressor.rows() - 2); }
};

/// e_hat <- A_d e_hat + B_d v (v of the previous sample); zeta = C (e - e_hat).
double observer_step(AdaptiveState& state, const Vec2& error, const DiscreteOperators& ops);

/// eta <- F_d eta + F^-1 (F_d - I) (theta_hat * input); v = H eta.
double compensator_step(AdaptiveState& state, double input, const DiscreteOperators& ops);

/// phi = C X at the current sample, then [X; Y] <- Phi [X; Y] + Psi [0; zeta I].
const VecX& regressor_step(AdaptiveState& state, double zeta, const DiscreteOperators& ops);

/// EFRA recursive least squares with radial projection onto |theta| <= theta_bar.
/// Uses state.phi as the regressor. Returns the normalised estimation error.
double rls_step(AdaptiveState& state, double zeta, const AdaptiveConfig& config);

/// Radial projection used by the discrete law.
VecX project_radial(const VecX& candidate, double bound);

/// Continuous-time projection: removes the P-weighted outward component of the
/// update direction when theta sits on the boundary and points outward.
VecX project_tangent(const VecX& direction, const VecX& theta, const MatX& P, double bound);

/// One controller sample: observer, regressor, RLS, compensator. Returns v.
///
/// The compensator is driven by -zeta so that G0[v] cancels the disturbance
/// contribution zeta in the error (v = -sum_k sigma^k/(s+sigma)^k [theta_k zeta]).
double adaptive_tick(AdaptiveState& state, const Vec2& error, const DiscreteOperators& ops,
                     const AdaptiveConfig& config);

/// Bundles configuration, operators and state for use inside a simulation.
class AdaptiveController {
 public:
  AdaptiveController(const AdaptiveConfig& config, const PdGains& gains);

  double tick(const Vec2& error) { return adaptive_tick(state_, error, ops_, config_); }

  const AdaptiveState& state() const { return state_; }
  const AdaptiveConfig& config() const { return config_; }
  const DiscreteOperators& operators() const { return ops_; }

 private:
  AdaptiveConfig config_;
  DiscreteOperators ops_;
  AdaptiveState state_;
};

}  // namespace deckwalk
