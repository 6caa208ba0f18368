#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "rgd/methods.hpp"

namespace rgd {

/// JSON form of a report: parameters, IT, final RSE, termination, timings and
/// the rse / set_size / time traces. Iterates and sets are not serialized.
std::string report_to_json(const SolveReport& report);
/// Throws UsageError on malformed input.
SolveReport report_from_json(std::string_view text);

void write_report_json(const std::filesystem::path& path, const SolveReport& report);
SolveReport read_report_json(const std::filesystem::path& path);

/// Per-iteration CSV: k,rse,set_size,cumulative_seconds. set_size is empty at k = 0.
void write_report_csv(std::ostream& out, const SolveReport& report);

}  // namespace rgd
