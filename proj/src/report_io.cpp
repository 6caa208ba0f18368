#include "rgd/report_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "format.hpp"
#include "json.hpp"
#include "rgd/errors.hpp"

namespace rgd {

std::string report_to_json(const SolveReport& report) {
  nlohmann::ordered_json j;
  j["method"] = to_string(report.method);
  j["theta"] = report.theta;
  j["eta1"] = report.eta1;
  j["eta2"] = report.eta2;
  j["block_size"] = report.block_size;
  j["seed"] = report.seed;
  j["iterations"] = report.iterations;
  j["final_rse"] = report.final_rse;
  j["termination"] = to_string(report.termination);
  j["wall_seconds"] = report.wall_seconds;
  j["max_residual_drift"] = report.max_residual_drift;
  j["rse_trace"] = report.rse_trace;
  j["set_size_trace"] = report.set_size_trace;
  j["time_trace"] = report.time_trace;
  return j.dump(2);
}

SolveReport report_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    SolveReport r;
    r.method = parse_method(j.at("method").get<std::string>());
    r.theta = j.value("theta", 0.0);
    r.eta1 = j.value("eta1", 0.0);
    r.eta2 = j.value("eta2", 0.0);
    r.block_size = j.value("block_size", std::size_t{0});
    r.seed = j.value("seed", std::uint64_t{0});
    r.iterations = j.at("iterations").get<std::size_t>();
    r.final_rse = j.at("final_rse").get<double>();
    r.termination = parse_termination(j.at("termination").get<std::string>());
    r.wall_seconds = j.value("wall_seconds", 0.0);
    r.max_residual_drift = j.value("max_residual_drift", 0.0);
    r.rse_trace = j.value("rse_trace", Vector{});
    r.set_size_trace = j.value("set_size_trace", std::vector<std::size_t>{});
    r.time_trace = j.value("time_trace", Vector{});
    if (r.time_trace.size() != r.rse_trace.size()) {
      throw UsageError("report: rse_trace and time_trace lengths differ");
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed report JSON: ") + e.what());
  }
}

void write_report_json(const std::filesystem::path& path, const SolveReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << report_to_json(report) << '\n';
}

SolveReport read_report_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read report " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return report_from_json(buf.str());
}

void write_report_csv(std::ostream& out, const SolveReport& report) {
  using detail::format_double;
  out << "k,rse,set_size,cumulative_seconds\n";
  for (std::size_t k = 0; k < report.rse_trace.size(); ++k) {
    out << k << ',' << format_double(report.rse_trace[k]) << ',';
    if (k > 0 && k - 1 < report.set_size_trace.size()) out << report.set_size_trace[k - 1];
    out << ',' << format_double(k < report.time_trace.size() ? report.time_trace[k] : 0.0)
        << '\n';
  }
}

}  // namespace rgd
