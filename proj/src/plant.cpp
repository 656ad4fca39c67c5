#include "deckwalk/plant.hpp"

#include <cmath>
#include <string>

#include "deckwalk/errors.hpp"

namespace deckwalk {

double VerticalRegulation::height(double t) const {
  return nominal_height + wobble_amplitude * std::sin(wobble_frequency * t);
}

VerticalRegulation make_vertical_regulation(double nominal_height, double wobble_amplitude,
                                            double wobble_frequency) {
  if (!std::isfinite(nominal_height) || nominal_height <= 0.0) {
    throw InvalidParameter("nominal height must be positive");
  }
  if (!std::isfinite(wobble_amplitude) || wobble_amplitude < 0.0 ||
      wobble_amplitude >= nominal_height) {
    throw InvalidParameter("height wobble amplitude must lie in [0, z_d), got " +
                           std::to_string(wobble_amplitude));
  }
  if (!std::isfinite(wobble_frequency)) {
    throw InvalidParameter("height wobble frequency must be finite");
  }
  return {nominal_height, wobble_amplitude, wobble_frequency};
}

Vec2 plant_rhs(const PendulumState& state, double t, double ankle_torque,
               const SurfaceMotion& motion, const VerticalRegulation& vertical,
               const GaitSpec& spec) {
  const double z = vertical.height(t);
  if (!(z > 0.0)) {
    throw SingularHeight("CoM height is not positive at t = " + std::to_string(t));
  }
  const auto acc = surface_accel(motion, t);
  const double f = (spec.gravity + acc.vertical) / z * state.position - acc.horizontal -
                   ankle_torque / (spec.mass * z);
  return {state.velocity, f};
}

}  // namespace deckwalk
