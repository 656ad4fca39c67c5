#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace deckwalk {

/// Ground that does not move.
struct Stationary {};

/// One term a sin(w t + phi) of a surface acceleration.
struct SinusoidTerm {
  double amplitude = 0.0;  // m/s^2
  double frequency = 0.0;  // rad/s
  double phase = 0.0;      // rad
};

/// Acceleration of one axis as a bias plus a sum of constant-parameter sinusoids.
struct AxisSinusoids {
  double bias = 0.0;
  std::vector<SinusoidTerm> terms;
};

/// Horizontal and vertical surface accelerations given as sinusoid sums.
///
/// The matching position profile is the double integral started from rest at
/// the origin, so e.g. a term 0.098 sin(0.7 t + pi/2) pairs with 0.2 (1 - cos 0.7 t).
struct SinusoidSum {
  AxisSinusoids horizontal;
  AxisSinusoids vertical;
};

/// Deck with time-varying characteristics:
///   x_ws(t) = 0.004 t^2 sin(4 t) exp(-t / 5)
///   z_ws(t) = 0.04 (0.5 cos(6 t) + cos(0.1 t^2) - 1.5)
struct TimeVaryingDeck {};

using SurfaceMotion = std::variant<Stationary, SinusoidSum, TimeVaryingDeck>;

struct SurfaceSample {
  double horizontal = 0.0;
  double vertical = 0.0;
};

/// Analytic second derivatives of the configured position profiles.
SurfaceSample surface_accel(const SurfaceMotion& motion, double t);

/// Position profiles (used for plotting and for checking the accelerations).
SurfaceSample surface_position(const SurfaceMotion& motion, double t);

/// Declared acceleration bounds (x_bar, z_bar) valid on [0, horizon].
///
/// Sinusoid sums use the triangle inequality; the time-varying deck uses the
/// triangle-inequality envelope of its analytic derivative, maximised on a dense grid.
SurfaceSample accel_bounds(const SurfaceMotion& motion, double horizon);

/// The three benchmark decks: 1 stationary, 2 slow sinusoids, 3 time-varying.
SurfaceMotion builtin_case(int id);

/// Number of distinct non-zero sinusoid frequencies, if the motion is a sinusoid sum.
std::optional<int> sinusoid_count(const SurfaceMotion& motion);

std::string describe(const SurfaceMotion& motion);

}  // namespace deckwalk
