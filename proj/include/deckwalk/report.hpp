#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "deckwalk/metrics.hpp"
#include "deckwalk/simulation.hpp"

namespace deckwalk {

struct ComparisonRow {
  Controller controller = Controller::PdFeedForward;
  std::optional<MetricsRecord> metrics;  // empty when the run diverged
  std::string note;
};

struct ComparisonReport {
  std::string case_label;
  double torque_limit = 40.0;
  std::vector<ComparisonRow> rows;
  /// RMSE(adaptive) <= RMSE(pd_ff); empty unless both ran to completion.
  std::optional<bool> adaptive_not_worse;
  /// Commanded peak torque of pd_ff above the limit; empty unless pd_ff completed.
  std::optional<bool> pd_exceeds_limit;
  std::optional<bool> adaptive_exceeds_limit;
};

struct ControllerRun {
  Controller controller;
  std::optional<SimTrace> trace;  // empty when the run diverged
  std::string note;
};

ComparisonReport compare_report(const std::vector<ControllerRun>& runs,
                                 const std::string& case_label, double torque_limit);

/// Aligned plain-text table, one row per controller.
std::string format_table(const ComparisonReport& report);

void write_report_csv(std::ostream& out, const ComparisonReport& report);

/// Writes one row per metric record (used by `run`).
void write_metrics_csv(std::ostream& out, const MetricsRecord& metrics);

/// Two-column (t, value) files, one per panel, named <prefix>_<signal>.dat.
/// Returns the written paths.
std::vector<std::filesystem::path> write_plot_data(const SimTrace& trace,
                                                   const std::filesystem::path& dir,
                                                   const std::string& prefix);

}  // namespace deckwalk
