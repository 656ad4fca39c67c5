#pragma once

#include <vector>

#include "deckwalk/gait.hpp"
#include "deckwalk/linalg.hpp"

namespace deckwalk {

struct DareOptions {
  double tolerance = 1e-12;  // max-abs change between successive Riccati iterates
  int max_iterations = 100000;
};

/// Default LQR weights of the step-length planner.
struct LqrWeights {
  Mat2 state = Mat2::Identity();
  double input = 30.0;
};

/// Discrete LQR step-length controller acting once per step on the
/// desired-minus-commanded error e^c sampled right after touchdown.
struct PlannerGains {
  Mat2 step_transition;  // A_s
  Vec2 input_map;        // B_s = (A_s - I) B_1
  Row2 gain;             // K
  Mat2 riccati;          // P_s
  Mat2 state_weight;     // Q
  double input_weight;   // R
  int iterations = 0;

  Mat2 closed_loop() const { return step_transition - input_map * gain; }
  double spectral_radius() const;
};

/// Solves the DARE by fixed-point iteration of the Riccati recursion started at P = Q.
/// Throws InvalidParameter for R <= 0 or indefinite Q, NumericalFailure on non-convergence.
PlannerGains build_planner(const GaitSpec& spec, const Mat2& state_weight, double input_weight,
                           const DareOptions& options = {});

inline PlannerGains build_planner(const GaitSpec& spec, const LqrWeights& weights = {},
                                  const DareOptions& options = {}) {
  return build_planner(spec, weights.state, weights.input, options);
}

/// Frobenius norm of P - (A^T P A + Q - A^T P B (R + B^T P B)^-1 B^T P A).
double dare_residual(const PlannerGains& planner);

/// u = T_s v_d - K (A_s - I) e^c(t_k^+). No saturation.
double step_length(const PlannerGains& planner, const Vec2& error_after_touchdown,
                   const GaitSpec& spec);

/// Commanded-profile error e^c(t_k^+) for k = 1..steps, starting from e^c(0) at
/// t = 0 (half a step before the first touchdown). Between touchdowns e^c
/// follows the pendulum flow; at t_k it jumps by u - T_s v_d.
std::vector<Vec2> planner_error_sequence(const PlannerGains& planner, const GaitSpec& spec,
                                         const Vec2& initial_error, int steps);

/// Touchdown jump of the commanded profile (same map as the plant).
inline PendulumState commanded_jump(const PendulumState& commanded_before, double step) {
  return touchdown_jump(commanded_before, step);
}

/// Steps longer than this are flagged as kinematically implausible (not clipped).
inline constexpr double kStepWarningThreshold = 0.6;

}  // namespace deckwalk
