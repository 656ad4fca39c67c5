#pragma once

#include "deckwalk/gait.hpp"
#include "deckwalk/linalg.hpp"
#include "deckwalk/surface.hpp"

namespace deckwalk {

/// CoM height as held by the (unmodelled) whole-body controller:
/// z_sc(t) = z_d + amplitude sin(frequency t), with amplitude < z_d.
struct VerticalRegulation {
  double nominal_height = 0.74;
  double wobble_amplitude = 0.0;
  double wobble_frequency = 0.0;

  double height(double t) const;
};

VerticalRegulation make_vertical_regulation(double nominal_height, double wobble_amplitude = 0.0,
                                            double wobble_frequency = 0.0);

/// Right-hand side [x_dot, f(t, x, tau)] of the disturbed variable-length pendulum.
/// Throws SingularHeight when z_sc(t) <= 0.
Vec2 plant_rhs(const PendulumState& state, double t, double ankle_torque,
               const SurfaceMotion& motion, const VerticalRegulation& vertical,
               const GaitSpec& spec);

}  // namespace deckwalk
