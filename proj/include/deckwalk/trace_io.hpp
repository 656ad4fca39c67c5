#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "deckwalk/simulation.hpp"

namespace deckwalk {

/// Column order of the trace CSV. `touchdown` is 0/1; all other columns are
/// doubles written in shortest round-trip decimal form.
const std::vector<std::string>& trace_columns();

void write_trace_csv(std::ostream& out, const SimTrace& trace);
void write_trace_csv(const std::filesystem::path& path, const SimTrace& trace);

/// Reads the samples back. Throws InvalidInput on a header or field mismatch.
std::vector<TraceSample> read_trace_csv(std::istream& in);
std::vector<TraceSample> read_trace_csv(const std::filesystem::path& path);

}  // namespace deckwalk
