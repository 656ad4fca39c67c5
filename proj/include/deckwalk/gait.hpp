#pragma once

#include "deckwalk/linalg.hpp"

namespace deckwalk {

/// Gait parameters of the reduced-order walker.
///
/// The pendulum frequency is derived from gravity and the nominal CoM height
/// on every call so it can never go stale when a field is edited.
struct GaitSpec {
  double step_period = 0.5;       // T_s [s]
  double desired_velocity = 0.2;  // v_d [m/s]
  double nominal_height = 0.74;   // z_d [m]
  double gravity = 9.81;          // g [m/s^2]
  double mass = 32.0;             // m [kg]
  double torque_limit = 40.0;     // tau_bar [N m]

  double lambda() const;

  /// Touchdown k happens at (k - 0.5) T_s, k = 1, 2, ...
  double touchdown_time(int k) const { return (k - 0.5) * step_period; }

  /// Distance the desired profile travels per step (T_s v_d).
  double stride() const { return step_period * desired_velocity; }
};

/// Validating constructor. v_d may be zero; every other input must be positive.
GaitSpec make_gait_spec(double step_period, double desired_velocity, double nominal_height,
                        double gravity, double mass, double torque_limit);

/// Horizontal CoM position and velocity relative to the current support point.
struct PendulumState {
  double position = 0.0;
  double velocity = 0.0;

  Vec2 vec() const { return {position, velocity}; }
  static PendulumState from(const Vec2& v) { return {v(0), v(1)}; }

  friend bool operator==(const PendulumState&, const PendulumState&) = default;
};

/// Initial state of the desired profile, chosen so the mean velocity over a step is v_d.
PendulumState desired_initial_state(const GaitSpec& spec);

/// exp(A_lambda dt) in closed hyperbolic form.
Mat2 profile_transition(const GaitSpec& spec, double dt);

/// Step-to-step transition matrix A_s = exp(A_lambda T_s).
Mat2 step_transition(const GaitSpec& spec);

/// Flow of the undisturbed pendulum over dt >= 0.
PendulumState propagate_profile(const PendulumState& state, double dt, const GaitSpec& spec);

/// Support-point reset at touchdown: the position shifts by the step length, velocity is kept.
PendulumState touchdown_jump(const PendulumState& state, double step_length);

/// Desired profile at step phase s in [-T_s/2, T_s/2], where s = -T_s/2 is just
/// after a touchdown and s = +T_s/2 just before the next one.
PendulumState desired_state_at_phase(const GaitSpec& spec, double phase);

/// Desired profile at time t (right-continuous: post-touchdown value at t_k).
PendulumState desired_state(const GaitSpec& spec, double t);

}  // namespace deckwalk
