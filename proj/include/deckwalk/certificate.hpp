#pragma once

#include <string>

#include "deckwalk/ankle.hpp"
#include "deckwalk/plant.hpp"
#include "deckwalk/simulation.hpp"

namespace deckwalk {

/// Residual-set certificate for the PD + feed-forward loop with v = 0.
struct ResidualCertificate {
  bool applicable = false;
  double lyapunov_norm = 0.0;  // spectral norm of L
  double rho0 = 0.0;           // bound on |x_ws'' - x^c z_ws'' / z_sc|
  double rho1 = 0.0;           // bound on |z_ws'' / z_sc|
  double threshold = 0.0;      // 1 / (2 |L|)
  double radius = 0.0;         // 2 |L| rho0 / (1 - 2 rho1 |L|)
  double max_tail_error = 0.0; // max |e| over the tail
  bool tail_inside = false;
  std::string note;
};

/// Checks the norm condition sup|z_ws''/z_sc| < 1/(2|L|) from the configured
/// bounds and, when it holds, whether every |e(t)| with t > tail_start lies in
/// the residual ball. x^c is bounded by max(sup_{t >= 5} |x^c|, 0.5 T_s v_d).
ResidualCertificate closed_loop_residual_check(const PdGains& gains, const SimTrace& trace,
                                               const SurfaceMotion& motion,
                                               const VerticalRegulation& vertical,
                                               const GaitSpec& spec, double tail_start = 10.0);

}  // namespace deckwalk
