#pragma once

#include <vector>

#include "deckwalk/gait.hpp"

namespace deckwalk {

/// Sine-series amplitudes xi_1..xi_n of the desired position x^d_sc(t):
/// xi_k = 4 pi v_d T_s k / (lambda^2 T_s^2 + 4 pi^2 k^2) * (-1)^(k-1).
std::vector<double> fourier_amplitudes(const GaitSpec& spec, int count);

/// Partial sum sum_{k<=n} xi_k sin(2 pi k t / T_s).
double fourier_partial_sum(const std::vector<double>& xi, double t, double step_period);

struct ReconstructionReport {
  int terms = 0;
  double max_error = 0.0;       // over a 1 kHz grid on one period
  double midpoint_error = 0.0;  // at t = 0.25 T_s
  int grid_points = 0;
};

/// Compares the partial sum with the closed-form profile. At touchdown grid
/// points the reference is the midpoint of the jump (zero), the value the
/// series converges to there.
ReconstructionReport fourier_reconstruction_check(const GaitSpec& spec, int terms,
                                                  double grid_rate = 1000.0);

}  // namespace deckwalk
