#include "deckwalk/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "deckwalk/errors.hpp"

namespace deckwalk {

using std::numbers::pi;

std::vector<double> fourier_amplitudes(const GaitSpec& spec, int count) {
  if (count < 1) throw InvalidParameter("number of Fourier terms must be at least 1");
  const double lt = spec.lambda() * spec.step_period;
  std::vector<double> xi(count);
  for (int k = 1; k <= count; ++k) {
    const double mag = 4.0 * pi * spec.desired_velocity * spec.step_period * k /
                       (lt * lt + 4.0 * pi * pi * k * k);
    xi[k - 1] = (k % 2 == 1) ? mag : -mag;
  }
  return xi;
}

double fourier_partial_sum(const std::vector<double>& xi, double t, double step_period) {
  const double w = 2.0 * pi * t / step_period;
  double sum = 0.0;
  for (std::size_t k = 0; k < xi.size(); ++k) sum += xi[k] * std::sin(w * (k + 1));
  return sum;
}

ReconstructionReport fourier_reconstruction_check(const GaitSpec& spec, int terms,
                                                  double grid_rate) {
  if (!(grid_rate > 0.0)) throw InvalidParameter("grid rate must be positive");
  const auto xi = fourier_amplitudes(spec, terms);
  const double T = spec.step_period;
  const int n = std::max(1, static_cast<int>(std::llround(T * grid_rate)));
  ReconstructionReport r;
  r.terms = terms;
  r.grid_points = n + 1;
  for (int j = 0; j <= n; ++j) {
    const double t = T * j / n;
    // Touchdowns sit at phase T_s/2 within [0, T_s].
    const bool at_jump = std::abs(t / T - 0.5) < 1e-12;
    const double reference = at_jump ? 0.0 : desired_state(spec, t).position;
    r.max_error = std::max(r.max_error, std::abs(fourier_partial_sum(xi, t, T) - reference));
  }
  const double tm = 0.25 * T;
  r.midpoint_error = std::abs(fourier_partial_sum(xi, tm, T) - desired_state(spec, tm).position);
  return r;
}

}  // namespace deckwalk
