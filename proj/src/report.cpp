#include "deckwalk/report.hpp"

#include <fstream>
#include <ostream>

#include <fmt/format.h>

namespace deckwalk {

namespace {

const ComparisonRow* find_row(const ComparisonReport& r, Controller c) {
  for (const auto& row : r.rows) {
    if (row.controller == c && row.metrics) return &row;
  }
  return nullptr;
}

std::string yes_no(const std::optional<bool>& b) {
  if (!b) return "n/a";
  return *b ? "yes" : "no";
}

}  // namespace

ComparisonReport compare_report(const std::vector<ControllerRun>& runs,
                                const std::string& case_label, double torque_limit) {
  ComparisonReport report;
  report.case_label = case_label;
  report.torque_limit = torque_limit;
  for (const auto& run : runs) {
    ComparisonRow row;
    row.controller = run.controller;
    row.note = run.note;
    if (run.trace) row.metrics = compute_metrics(*run.trace);
    report.rows.push_back(std::move(row));
  }
  const auto* pd = find_row(report, Controller::PdFeedForward);
  const auto* ad = find_row(report, Controller::Adaptive);
  if (pd && ad) report.adaptive_not_worse = ad->metrics->rmse <= pd->metrics->rmse;
  if (pd) report.pd_exceeds_limit = pd->metrics->trq > torque_limit;
  if (ad) report.adaptive_exceeds_limit = ad->metrics->trq > torque_limit;
  return report;
}

std::string format_table(const ComparisonReport& report) {
  std::string out = fmt::format("{}\n", report.case_label);
  out += fmt::format("{:<10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}\n", "controller", "RMSE",
                     "PEAK", "RMSE-PI", "PEAK-PI", "TRQ", "FIT");
  for (const auto& row : report.rows) {
    if (!row.metrics) {
      out += fmt::format("{:<10} {}\n", to_string(row.controller),
                         row.note.empty() ? "diverged" : row.note);
      continue;
    }
    const auto& m = *row.metrics;
    out += fmt::format("{:<10} {:>10.2e} {:>10.2e} {:>10.2e} {:>10.2e} {:>10.2e} {:>10.2e}\n",
                       to_string(row.controller), m.rmse, m.peak, m.rmse_pi, m.peak_pi, m.trq,
                       m.fit);
  }
  out += fmt::format("adaptive RMSE <= pd_ff RMSE: {}\n", yes_no(report.adaptive_not_worse));
  out += fmt::format("pd_ff TRQ above {} N m: {}\n", report.torque_limit,
                     yes_no(report.pd_exceeds_limit));
  out += fmt::format("adaptive TRQ above {} N m: {}\n", report.torque_limit,
                     yes_no(report.adaptive_exceeds_limit));
  return out;
}

void write_report_csv(std::ostream& out, const ComparisonReport& report) {
  out << "case,controller,rmse,peak,rmse_pi,peak_pi,trq,fit,status\n";
  for (const auto& row : report.rows) {
    if (!row.metrics) {
      out << fmt::format("{},{},,,,,,,diverged\n", report.case_label, to_string(row.controller));
      continue;
    }
    const auto& m = *row.metrics;
    out << fmt::format("{},{},{},{},{},{},{},{},ok\n", report.case_label, to_string(row.controller),
                       m.rmse, m.peak, m.rmse_pi, m.peak_pi, m.trq, m.fit);
  }
}

void write_metrics_csv(std::ostream& out, const MetricsRecord& m) {
  out << "rmse,peak,rmse_pi,peak_pi,trq,fit\n";
  out << fmt::format("{},{},{},{},{},{}\n", m.rmse, m.peak, m.rmse_pi, m.peak_pi, m.trq, m.fit);
}

std::vector<std::filesystem::path> write_plot_data(const SimTrace& trace,
                                                   const std::filesystem::path& dir,
                                                   const std::string& prefix) {
  struct Panel {
    const char* name;
    double TraceSample::*field;
  };
  static constexpr Panel kPanels[] = {
      {"e", &TraceSample::e},           {"ec", &TraceSample::ec},
      {"x", &TraceSample::x},           {"tau", &TraceSample::tau_cmd},
      {"v", &TraceSample::v},           {"theta_norm", &TraceSample::theta_norm},
      {"x_s0c", &TraceSample::x_s0c},
  };
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const auto& panel : kPanels) {
    const auto path = dir / fmt::format("{}_{}.dat", prefix, panel.name);
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open " + path.string() + " for writing");
    out << "# t " << panel.name << '\n';
    for (const auto& s : trace.samples) out << fmt::format("{} {}\n", s.t, s.*(panel.field));
    written.push_back(path);
  }
  return written;
}

}  // namespace deckwalk
