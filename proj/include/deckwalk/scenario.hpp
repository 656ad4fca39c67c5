#pragma once

#include <filesystem>
#include <string>

#include "deckwalk/adaptive.hpp"
#include "deckwalk/gait.hpp"
#include "deckwalk/planner.hpp"
#include "deckwalk/simulation.hpp"

namespace deckwalk {

/// Everything needed for one closed-loop run. Defaults reproduce the benchmark
/// setup (T_s = 0.5 s, v_d = 0.2 m/s, k_p = 25, k_d = 10, 500 Hz, 15 s).
struct Scenario {
  GaitSpec gait;
  std::string surface_label = "case1";
  SimConfig sim;
  double kp = 25.0;
  double kd = 10.0;
  LqrWeights lqr;
  AdaptiveConfig adaptive;
  std::string output_dir;
  bool write_plots = true;
};

/// Built-in benchmark scenario for deck case 1, 2 or 3.
Scenario builtin_scenario(int case_id, Controller controller = Controller::PdFeedForward);

/// Parses a YAML scenario. Unknown keys and malformed values raise
/// ScenarioError with a 1-based line number.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

class ScenarioError : public InvalidInput {
 public:
  ScenarioError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Builds the planner and gains and runs the simulation.
SimTrace run_scenario(const Scenario& scenario);

}  // namespace deckwalk
