#pragma once

#include <vector>

#include "deckwalk/simulation.hpp"

namespace deckwalk {

struct EvaluationWindow {
  double start = 5.0;
  double end = 15.0;
};

struct MetricsRecord {
  double rmse = 0.0;     // RMS of e_sc over the window
  double peak = 0.0;     // max |e_sc| over the window
  double rmse_pi = 0.0;  // RMS over pre-impact samples in the window
  double peak_pi = 0.0;
  double trq = 0.0;      // max commanded |tau| over the whole run
  double fit = 0.0;      // least-squares slope of x_s0c over the window
  int window_samples = 0;
  int pre_impact_samples = 0;
};

/// Throws InvalidInput if the trace does not reach the end of the window or the
/// window holds fewer than two samples.
MetricsRecord compute_metrics(const std::vector<TraceSample>& samples,
                              const EvaluationWindow& window = {});

inline MetricsRecord compute_metrics(const SimTrace& trace, const EvaluationWindow& window = {}) {
  return compute_metrics(trace.samples, window);
}

}  // namespace deckwalk
