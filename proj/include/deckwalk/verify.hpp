#pragma once

#include <string>
#include <vector>

#include "deckwalk/planner.hpp"

namespace deckwalk {

struct VerifyOptions {
  /// Riccati iteration settings used for the residual check (test hook: a loose
  /// tolerance makes that check fail).
  DareOptions dare;
};

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the property battery: planner decay, step-transition identity,
/// Riccati and Lyapunov residuals, error continuity, residual-set certificate,
/// adaptive superiority, velocity tracking, boundedness, Fourier oracle,
/// discretization fidelity and torque behaviour.
std::vector<PropertyResult> run_verification(const VerifyOptions& options = {});

/// Matrix exponential by truncated Taylor series with scaling and squaring.
/// Reference for the discretization check (independent of expm).
MatX series_expm(const MatX& m, int terms = 40);

}  // namespace deckwalk
