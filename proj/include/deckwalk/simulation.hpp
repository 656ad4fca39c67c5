#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deckwalk/adaptive.hpp"
#include "deckwalk/ankle.hpp"
#include "deckwalk/errors.hpp"
#include "deckwalk/gait.hpp"
#include "deckwalk/plant.hpp"
#include "deckwalk/planner.hpp"
#include "deckwalk/surface.hpp"

namespace deckwalk {

enum class Controller { PdFeedForward, Adaptive, AnkleOff };

std::string_view to_string(Controller c);
/// Accepts "pd_ff", "adaptive", "ankle_off" (case-insensitive, '-' or '_').
Controller parse_controller(std::string_view name);

struct SimConfig {
  double duration = 15.0;
  double sample_rate = 500.0;
  int substeps = 4;
  Controller controller = Controller::PdFeedForward;
  SurfaceMotion surface = Stationary{};
  VerticalRegulation vertical{};
  bool saturate = true;
  double divergence_limit = 1e3;
  double noise_stddev = 0.0;  // additive Gaussian noise on the measured error
  std::uint64_t seed = 0;
  PendulumState initial_state{};  // robot starts at rest; x^c(0) = x(0)

  double sample_period() const { return 1.0 / sample_rate; }
  int sample_count() const;
};

/// Throws InvalidParameter unless the touchdown grid lands on samples.
void validate(const SimConfig& config, const GaitSpec& spec);

/// One row of the trace. State columns (x, x^d, x^c, e, e^c, offset) are the
/// pre-impact values at touchdown samples; control columns are the values held
/// over the following sample interval.
struct TraceSample {
  double t = 0.0;
  double height = 0.0;
  double x = 0.0, xdot = 0.0;
  double xd = 0.0, xd_dot = 0.0;
  double xc = 0.0, xc_dot = 0.0;
  double e = 0.0, e_dot = 0.0;
  double ec = 0.0, ec_dot = 0.0;
  double tau_cmd = 0.0, tau_applied = 0.0;
  double v = 0.0, zeta = 0.0;
  double theta_norm = 0.0;
  double p_eig_min = 0.0, p_eig_max = 0.0;  // zero when the adaptive loop is off
  double step = 0.0;                        // u applied at this sample, zero otherwise
  double offset = 0.0;                      // cumulative support-point offset
  double x_s0c = 0.0;                       // offset + x
  bool touchdown = false;
};

struct TouchdownEvent {
  int index = 0;   // k = 1, 2, ...
  int sample = 0;  // row in SimTrace::samples
  double t = 0.0;
  double step = 0.0;
  Vec2 e_before = Vec2::Zero();
  Vec2 e_after = Vec2::Zero();
  Vec2 ec_before = Vec2::Zero();
  Vec2 ec_after = Vec2::Zero();
  Vec2 xd_before = Vec2::Zero();
  Vec2 xd_after = Vec2::Zero();
};

struct SimTrace {
  Controller controller = Controller::PdFeedForward;
  double sample_period = 0.0;
  GaitSpec spec;
  Vec2 ec_initial = Vec2::Zero();  // e^c(0)
  std::vector<TraceSample> samples;
  std::vector<TouchdownEvent> touchdowns;
  int long_steps = 0;  // steps with |u| above kStepWarningThreshold
  std::vector<std::string> warnings;
};

/// Raised when |x| exceeds the divergence limit or a state turns non-finite.
class DivergenceError : public NumericalFailure {
 public:
  DivergenceError(const std::string& what, SimTrace partial)
      : NumericalFailure(what), partial_(std::move(partial)) {}
  const SimTrace& partial_trace() const { return partial_; }

 private:
  SimTrace partial_;
};

SimTrace run_simulation(const SimConfig& config, const GaitSpec& spec, const PlannerGains& planner,
                        const PdGains& gains, const AdaptiveConfig& adaptive = {});

struct JumpReport {
  double max_error_jump = 0.0;          // max |e(t_k^+) - e(t_k^-)|
  double max_commanded_deviation = 0.0; // max |delta e^c_sc - (u - T_s v_d)|
  double max_desired_deviation = 0.0;   // max |delta x^d_sc + T_s v_d|
  int touchdowns = 0;
};

JumpReport jump_consistency_check(const SimTrace& trace);

}  // namespace deckwalk
