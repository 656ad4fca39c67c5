#pragma once

#include "deckwalk/gait.hpp"
#include "deckwalk/linalg.hpp"
#include "deckwalk/surface.hpp"

namespace deckwalk {

/// PD gains of the ankle-torque law together with the closed-loop error
/// matrices A = [[0, 1], [-k_p, -k_d]], B = [0, k_p] and the Lyapunov solution
/// L of A^T L + L A = -I.
struct PdGains {
  double kp = 25.0;
  double kd = 10.0;
  Mat2 A;
  Vec2 B;
  Mat2 L;

  /// Spectral norm of L.
  double lyapunov_norm() const;
};

PdGains make_pd_gains(double kp = 25.0, double kd = 10.0);

/// Solves A^T L + L A = -I for a 2x2 Hurwitz A (three unknowns by symmetry).
Mat2 solve_lyapunov(const Mat2& a);

/// Frobenius norm of A^T L + L A + I.
double lyapunov_residual(const PdGains& gains);

/// PD + feed-forward ankle torque, before saturation.
///
/// `error` is e = x^c - x, `commanded` is x^c, `height` the current z_sc and
/// `adaptive_input` the compensator output v.
double ankle_torque(const PdGains& gains, const Vec2& error, const PendulumState& commanded,
                    double height, double adaptive_input, const GaitSpec& spec);

/// Input disturbance d(t) seen by the closed-loop error system. Analysis only;
/// the controller never evaluates it.
double input_disturbance(double t, const PendulumState& commanded, double height,
                         const SurfaceMotion& motion, const PdGains& gains);

}  // namespace deckwalk
