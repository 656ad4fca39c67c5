#include "deckwalk/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace deckwalk {

namespace {

struct Column {
  const char* name;
  double TraceSample::*field;
};

constexpr Column kColumns[] = {
    {"t", &TraceSample::t},
    {"height", &TraceSample::height},
    {"x", &TraceSample::x},
    {"xdot", &TraceSample::xdot},
    {"xd", &TraceSample::xd},
    {"xd_dot", &TraceSample::xd_dot},
    {"xc", &TraceSample::xc},
    {"xc_dot", &TraceSample::xc_dot},
    {"e", &TraceSample::e},
    {"e_dot", &TraceSample::e_dot},
    {"ec", &TraceSample::ec},
    {"ec_dot", &TraceSample::ec_dot},
    {"tau_cmd", &TraceSample::tau_cmd},
    {"tau_applied", &TraceSample::tau_applied},
    {"v", &TraceSample::v},
    {"zeta", &TraceSample::zeta},
    {"theta_norm", &TraceSample::theta_norm},
    {"p_eig_min", &TraceSample::p_eig_min},
    {"p_eig_max", &TraceSample::p_eig_max},
    {"step", &TraceSample::step},
    {"offset", &TraceSample::offset},
    {"x_s0c", &TraceSample::x_s0c},
};

double parse_double(std::string_view text, std::size_t line) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidInput(fmt::format("trace line {}: bad number '{}'", line, text));
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

const std::vector<std::string>& trace_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& c : kColumns) v.emplace_back(c.name);
    v.emplace_back("touchdown");
    return v;
  }();
  return names;
}

void write_trace_csv(std::ostream& out, const SimTrace& trace) {
  const auto& names = trace_columns();
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
  out << '\n';
  fmt::memory_buffer buf;
  for (const auto& s : trace.samples) {
    buf.clear();
    for (const auto& c : kColumns) fmt::format_to(std::back_inserter(buf), "{},", s.*(c.field));
    fmt::format_to(std::back_inserter(buf), "{}\n", s.touchdown ? 1 : 0);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
}

void write_trace_csv(const std::filesystem::path& path, const SimTrace& trace) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open " + path.string() + " for writing");
  write_trace_csv(out, trace);
}

std::vector<TraceSample> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("trace: missing header");
  const auto& names = trace_columns();
  const auto header = split(line);
  if (header.size() != names.size()) throw InvalidInput("trace: unexpected column count");
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (header[i] != names[i]) {
      throw InvalidInput(fmt::format("trace: column {} is '{}', expected '{}'", i + 1, header[i],
                                     names[i]));
    }
  }
  std::vector<TraceSample> samples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != names.size()) {
      throw InvalidInput(fmt::format("trace line {}: expected {} fields, got {}", line_no,
                                     names.size(), fields.size()));
    }
    TraceSample s;
    std::size_t i = 0;
    for (const auto& c : kColumns) s.*(c.field) = parse_double(fields[i++], line_no);
    const auto flag = fields[i];
    if (flag != "0" && flag != "1") {
      throw InvalidInput(fmt::format("trace line {}: touchdown flag must be 0 or 1", line_no));
    }
    s.touchdown = flag == "1";
    samples.push_back(s);
  }
  return samples;
}

std::vector<TraceSample> read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  return read_trace_csv(in);
}

}  // namespace deckwalk
