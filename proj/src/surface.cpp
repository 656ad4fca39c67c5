#include "deckwalk/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "deckwalk/errors.hpp"

namespace deckwalk {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double axis_accel(const AxisSinusoids& axis, double t) {
  double acc = axis.bias;
  for (const auto& term : axis.terms) {
    acc += term.amplitude * std::sin(term.frequency * t + term.phase);
  }
  return acc;
}

// Double integral from rest at the origin.
double axis_position(const AxisSinusoids& axis, double t) {
  double pos = 0.5 * axis.bias * t * t;
  for (const auto& term : axis.terms) {
    const double w = term.frequency;
    if (w == 0.0) {
      pos += 0.5 * term.amplitude * std::sin(term.phase) * t * t;
      continue;
    }
    pos += term.amplitude / (w * w) *
           (std::sin(term.phase) + w * t * std::cos(term.phase) - std::sin(w * t + term.phase));
  }
  return pos;
}

double axis_bound(const AxisSinusoids& axis) {
  double bound = std::abs(axis.bias);
  for (const auto& term : axis.terms) bound += std::abs(term.amplitude);
  return bound;
}

// Horizontal deck motion 0.004 t^2 sin(4t) e^{-t/5} = 0.004 f(t) sin(4t).
struct HorizontalEnvelope {
  double f, df, ddf;
};

HorizontalEnvelope horizontal_factors(double t) {
  const double decay = std::exp(-t / 5.0);
  return {t * t * decay, (2.0 * t - t * t / 5.0) * decay,
          (2.0 - 4.0 * t / 5.0 + t * t / 25.0) * decay};
}

double deck_xddot(double t) {
  const auto h = horizontal_factors(t);
  const double s = std::sin(4.0 * t);
  const double c = std::cos(4.0 * t);
  return 0.004 * (h.ddf * s + 8.0 * h.df * c - 16.0 * h.f * s);
}

double deck_zddot(double t) {
  const double q = 0.1 * t * t;
  return 0.04 * (-18.0 * std::cos(6.0 * t) - 0.2 * std::sin(q) - 0.04 * t * t * std::cos(q));
}

}  // namespace

SurfaceSample surface_accel(const SurfaceMotion& motion, double t) {
  return std::visit(
      Overloaded{
          [](const Stationary&) { return SurfaceSample{}; },
          [t](const SinusoidSum& m) {
            return SurfaceSample{axis_accel(m.horizontal, t), axis_accel(m.vertical, t)};
          },
          [t](const TimeVaryingDeck&) { return SurfaceSample{deck_xddot(t), deck_zddot(t)}; },
      },
      motion);
}

SurfaceSample surface_position(const SurfaceMotion& motion, double t) {
  return std::visit(
      Overloaded{
          [](const Stationary&) { return SurfaceSample{}; },
          [t](const SinusoidSum& m) {
            return SurfaceSample{axis_position(m.horizontal, t), axis_position(m.vertical, t)};
          },
          [t](const TimeVaryingDeck&) {
            return SurfaceSample{
                0.004 * t * t * std::sin(4.0 * t) * std::exp(-t / 5.0),
                0.04 * (0.5 * std::cos(6.0 * t) + std::cos(0.1 * t * t) - 1.5)};
          },
      },
      motion);
}

SurfaceSample accel_bounds(const SurfaceMotion& motion, double horizon) {
  return std::visit(
      Overloaded{
          [](const Stationary&) { return SurfaceSample{}; },
          [](const SinusoidSum& m) {
            return SurfaceSample{axis_bound(m.horizontal), axis_bound(m.vertical)};
          },
          [horizon](const TimeVaryingDeck&) {
            SurfaceSample bound;
            const int n = std::max(1, static_cast<int>(std::ceil(horizon / 1e-3)));
            for (int i = 0; i <= n; ++i) {
              const double t = horizon * i / n;
              const auto h = horizontal_factors(t);
              bound.horizontal = std::max(
                  bound.horizontal,
                  0.004 * (std::abs(h.ddf) + 8.0 * std::abs(h.df) + 16.0 * std::abs(h.f)));
            }
            // The envelope grows with t, so it peaks at the horizon.
            bound.vertical = 0.04 * (18.0 + 0.2 + 0.04 * horizon * horizon);
            return bound;
          },
      },
      motion);
}

SurfaceMotion builtin_case(int id) {
  using std::numbers::pi;
  switch (id) {
    case 1:
      return Stationary{};
    case 2: {
      // x_ws = 0.2 (1 - cos 0.7t), z_ws = 0.5 (1 - cos 0.4t)
      SinusoidSum m;
      m.horizontal.terms.push_back({0.2 * 0.7 * 0.7, 0.7, 0.5 * pi});
      m.vertical.terms.push_back({0.5 * 0.4 * 0.4, 0.4, 0.5 * pi});
      return m;
    }
    case 3:
      return TimeVaryingDeck{};
    default:
      throw InvalidParameter("unknown builtin case " + std::to_string(id) +
                             " (expected 1, 2 or 3)");
  }
}

std::optional<int> sinusoid_count(const SurfaceMotion& motion) {
  return std::visit(
      Overloaded{
          [](const Stationary&) -> std::optional<int> { return 0; },
          [](const SinusoidSum& m) -> std::optional<int> {
            std::set<double> freqs;
            for (const auto* axis : {&m.horizontal, &m.vertical}) {
              for (const auto& term : axis->terms) {
                if (term.amplitude != 0.0 && term.frequency != 0.0) {
                  freqs.insert(std::abs(term.frequency));
                }
              }
            }
            return static_cast<int>(freqs.size());
          },
          [](const TimeVaryingDeck&) -> std::optional<int> { return std::nullopt; },
      },
      motion);
}

std::string describe(const SurfaceMotion& motion) {
  return std::visit(Overloaded{
                        [](const Stationary&) { return std::string("stationary"); },
                        [](const SinusoidSum& m) {
                          return "sinusoid sum (" + std::to_string(m.horizontal.terms.size()) +
                                 " horizontal, " + std::to_string(m.vertical.terms.size()) +
                                 " vertical terms)";
                        },
                        [](const TimeVaryingDeck&) { return std::string("time-varying deck"); },
                    },
                    motion);
}

}  // namespace deckwalk
