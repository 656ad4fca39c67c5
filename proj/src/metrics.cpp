#include "deckwalk/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace deckwalk {

MetricsRecord compute_metrics(const std::vector<TraceSample>& samples,
                              const EvaluationWindow& window) {
  constexpr double kSlack = 1e-9;
  if (samples.empty() || samples.back().t < window.end - kSlack) {
    throw InvalidInput(fmt::format("trace must cover t = {} s", window.end));
  }
  MetricsRecord m;
  double sum_sq = 0.0, sum_sq_pi = 0.0;
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (const auto& s : samples) {
    m.trq = std::max(m.trq, std::abs(s.tau_cmd));
    if (s.t < window.start - kSlack || s.t > window.end + kSlack) continue;
    const double a = std::abs(s.e);
    sum_sq += a * a;
    m.peak = std::max(m.peak, a);
    ++m.window_samples;
    if (s.touchdown) {
      sum_sq_pi += a * a;
      m.peak_pi = std::max(m.peak_pi, a);
      ++m.pre_impact_samples;
    }
    st += s.t;
    sy += s.x_s0c;
    stt += s.t * s.t;
    sty += s.t * s.x_s0c;
  }
  if (m.window_samples < 2) throw InvalidInput("evaluation window holds fewer than two samples");
  const double n = m.window_samples;
  m.rmse = std::sqrt(sum_sq / n);
  if (m.pre_impact_samples > 0) m.rmse_pi = std::sqrt(sum_sq_pi / m.pre_impact_samples);
  const double t_mean = st / n;
  const double y_mean = sy / n;
  m.fit = (sty / n - t_mean * y_mean) / (stt / n - t_mean * t_mean);
  return m;
}

}  // namespace deckwalk
