#include "deckwalk/gait.hpp"

#include <cmath>
#include <string>

#include "deckwalk/errors.hpp"

namespace deckwalk {

namespace {

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw InvalidParameter(std::string(name) + " must be positive and finite, got " +
                           std::to_string(value));
  }
}

}  // namespace

double GaitSpec::lambda() const { return std::sqrt(gravity / nominal_height); }

GaitSpec make_gait_spec(double step_period, double desired_velocity, double nominal_height,
                        double gravity, double mass, double torque_limit) {
  require_positive(step_period, "step_period");
  require_positive(nominal_height, "nominal_height");
  require_positive(gravity, "gravity");
  require_positive(mass, "mass");
  require_positive(torque_limit, "torque_limit");
  if (!std::isfinite(desired_velocity) || desired_velocity < 0.0) {
    throw InvalidParameter("desired_velocity must be non-negative and finite, got " +
                           std::to_string(desired_velocity));
  }
  return GaitSpec{step_period, desired_velocity, nominal_height, gravity, mass, torque_limit};
}

PendulumState desired_initial_state(const GaitSpec& spec) {
  const double lam = spec.lambda();
  const double half = 0.5 * lam * spec.step_period;
  return {0.0, spec.stride() * lam / (2.0 * std::sinh(half))};
}

Mat2 profile_transition(const GaitSpec& spec, double dt) {
  const double lam = spec.lambda();
  const double c = std::cosh(lam * dt);
  const double s = std::sinh(lam * dt);
  Mat2 m;
  m << c, s / lam, lam * s, c;
  return m;
}

Mat2 step_transition(const GaitSpec& spec) { return profile_transition(spec, spec.step_period); }

PendulumState propagate_profile(const PendulumState& state, double dt, const GaitSpec& spec) {
  if (!(dt >= 0.0)) {
    throw InvalidParameter("propagate_profile requires dt >= 0");
  }
  return PendulumState::from(profile_transition(spec, dt) * state.vec());
}

PendulumState touchdown_jump(const PendulumState& state, double step_length) {
  return {state.position - step_length, state.velocity};
}

PendulumState desired_state_at_phase(const GaitSpec& spec, double phase) {
  const double lam = spec.lambda();
  const double amp = spec.stride() / (2.0 * std::sinh(0.5 * lam * spec.step_period));
  return {amp * std::sinh(lam * phase), amp * lam * std::cosh(lam * phase)};
}

PendulumState desired_state(const GaitSpec& spec, double t) {
  const double period = spec.step_period;
  // Index of the last touchdown at or before t (k = 0 stands for the virtual t_0 = -T_s/2).
  const double k = std::floor(t / period + 0.5 + 1e-12);
  const double phase = t - (k - 0.5) * period - 0.5 * period;
  return desired_state_at_phase(spec, phase);
}

}  // namespace deckwalk
