// rgd: generate problems, run solvers and sweeps, certify per-step bounds.
//
// Exit codes: 0 success, 1 certificate violated or internal error, 2 usage,
// 3 stalled or not converged, 4 size-guard refusal.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rgd/errors.hpp"
#include "rgd/harness.hpp"
#include "rgd/methods.hpp"
#include "rgd/problems.hpp"
#include "rgd/report_io.hpp"
#include "rgd/theory.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitSizeGuard = 4;

struct GenOptions {
  std::string kind = "randn";
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t r = 0;
  double sigma1 = 1.25;
  double sigma2 = 1.0;
  bool inconsistent = false;
  double noise_scale = 0.1;
  std::uint64_t seed = 0;

  rgd::GeneratorSpec spec() const {
    rgd::GeneratorSpec g;
    g.kind = rgd::parse_matrix_kind(kind);
    g.m = m;
    g.n = n;
    g.r = r == 0 ? std::min(m, n) : r;
    g.sigma1 = sigma1;
    g.sigma2 = sigma2;
    g.inconsistent = inconsistent;
    g.noise_scale = noise_scale;
    g.seed = seed;
    return g;
  }
};

struct SolverOptions {
  std::string method = "rgdr";
  double theta = 0.5;
  double eta1 = 0.5;
  double eta2 = 0.1;
  std::size_t block_size = 100;
  double tol = 1e-4;
  std::size_t max_iters = 1'000'000;
  std::uint64_t seed = 0;

  rgd::SolveConfig config() const {
    rgd::SolveConfig c;
    c.method = rgd::parse_method(method);
    c.set_theta(theta);
    c.selection.eta1 = eta1;
    c.selection.eta2 = eta2;
    c.selection.block_size = block_size;
    c.stop.rse_tol = tol;
    c.stop.max_iters = max_iters;
    c.seed = seed;
    return c;
  }
};

void add_gen_flags(CLI::App* cmd, GenOptions& g) {
  cmd->add_option("--kind", g.kind, "randn or smatrix")->capture_default_str();
  cmd->add_option("--m", g.m, "rows");
  cmd->add_option("--n", g.n, "columns");
  cmd->add_option("--r", g.r, "smatrix rank (default min(m,n))");
  cmd->add_option("--sigma1", g.sigma1, "largest singular value")->capture_default_str();
  cmd->add_option("--sigma2", g.sigma2, "smallest nonzero singular value")->capture_default_str();
  cmd->add_flag("--inconsistent", g.inconsistent, "add null-space noise to b");
  cmd->add_option("--noise-scale", g.noise_scale, "|db| / |Ax*|")->capture_default_str();
}

void add_solver_flags(CLI::App* cmd, SolverOptions& s) {
  cmd->add_option("--method", s.method, "method name")->capture_default_str();
  cmd->add_option("--theta", s.theta, "relaxation parameter")->capture_default_str();
  cmd->add_option("--eta1", s.eta1, "GBK threshold")->capture_default_str();
  cmd->add_option("--eta2", s.eta2, "AMDCD distance window")->capture_default_str();
  cmd->add_option("--block-size", s.block_size, "RBK/RBCD block size")->capture_default_str();
  cmd->add_option("--tol", s.tol, "RSE tolerance")->capture_default_str();
  cmd->add_option("--max-iters", s.max_iters, "iteration cap")->capture_default_str();
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rgd::UsageError("cannot write " + path.string());
  return out;
}

// Writes to `path`, or stdout when it is empty.
template <class Fn>
void emit(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
  } else {
    auto out = open_out(path);
    fn(out);
  }
}

bool solved(rgd::Termination t) {
  return t == rgd::Termination::converged || t == rgd::Termination::stationary;
}

int cmd_gen(const GenOptions& g, const std::string& out) {
  if (out.empty()) throw rgd::UsageError("gen: --out DIR is required");
  const auto problem = rgd::generate(g.spec());
  rgd::save_problem(problem, out);
  std::cout << "wrote " << out << " (" << problem.A.rows() << "x" << problem.A.cols() << ", "
            << (problem.consistent ? "consistent" : "inconsistent") << ")\n";
  return kExitOk;
}

int cmd_solve(const std::string& problem_dir, const SolverOptions& s, std::size_t repeats,
              const std::string& out) {
  const auto problem = rgd::load_problem(problem_dir);
  const auto config = s.config();
  const auto summary = rgd::solve_repeated(problem.A, problem.b, problem.x_star, config, repeats);
  const auto& first = summary.reports.front();

  std::size_t solved_runs = 0;
  for (const auto& r : summary.reports) solved_runs += solved(r.termination) ? 1 : 0;

  std::ostringstream line;
  line << "method,theta,runs,converged_runs,mean_it,mean_cpu,mean_final_rse,termination\n"
       << rgd::to_string(config.method) << ',' << config.theta() << ',' << summary.runs << ','
       << summary.converged_runs << ',' << rgd::format_mean_iterations(summary.mean_iterations)
       << ',' << summary.mean_seconds << ',' << summary.mean_final_rse << ','
       << rgd::to_string(first.termination) << '\n';
  std::cout << line.str();

  if (!out.empty()) {
    fs::create_directories(out);
    rgd::write_report_json(fs::path(out) / "report.json", first);
    auto trace = open_out(fs::path(out) / "trace.csv");
    rgd::write_report_csv(trace, first);
    auto summary_csv = open_out(fs::path(out) / "summary.csv");
    summary_csv << line.str();
  }
  return solved_runs == summary.runs ? kExitOk : kExitNotConverged;
}

int cmd_bench(const std::string& config_path, const std::string& out) {
  std::ifstream in(config_path);
  if (!in) throw rgd::UsageError("bench: cannot read config " + config_path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto config = rgd::BenchConfig::from_json(buf.str());
  const auto result = rgd::run_bench(config);
  if (out.empty()) {
    rgd::write_bench_csv(std::cout, result.rows);
    std::cout << '\n';
    rgd::write_trend_csv(std::cout, result.trends);
  } else {
    fs::create_directories(out);
    auto bench = open_out(fs::path(out) / "bench.csv");
    rgd::write_bench_csv(bench, result.rows);
    auto trend = open_out(fs::path(out) / "trend.csv");
    rgd::write_trend_csv(trend, result.trends);
    std::cout << "wrote " << result.rows.size() << " rows to " << out << '\n';
  }
  return kExitOk;
}

int cmd_certify(const std::string& problem_dir, const GenOptions& g, const SolverOptions& s,
                std::size_t repeats, const std::string& out) {
  if (problem_dir.empty()) rgd::check_certify_size(g.m, g.n);
  const auto problem =
      problem_dir.empty() ? rgd::generate(g.spec()) : rgd::load_problem(problem_dir);
  rgd::check_certify_size(problem.A);

  auto config = s.config();
  config.record_trace = true;
  if (config.method == rgd::Method::rgdr || config.method == rgd::Method::rgdc) {
    const auto report = rgd::run_method(problem.A, problem.b, problem.x_star, config);
    const auto certs = rgd::certify_run(report, problem.A, problem.b, problem.x_star, config);
    std::size_t violated = 0;
    for (const auto& c : certs) violated += c.satisfied ? 0 : 1;
    emit(out, [&](std::ostream& os) { rgd::write_certificates_csv(os, certs); });
    std::cerr << "certified " << certs.size() << " steps, " << violated << " violated\n";
    return violated == 0 ? kExitOk : kExitFailed;
  }
  if (config.method == rgd::Method::rgrk || config.method == rgd::Method::rgrcd) {
    const auto summary =
        rgd::solve_repeated(problem.A, problem.b, problem.x_star, config, repeats);
    const auto cert = rgd::certify_randomized(summary.reports, problem.A, problem.x_star, config);
    emit(out, [&](std::ostream& os) {
      os << "runs,expected_factor,mean_ratio,standard_error,satisfied\n"
         << cert.runs << ',' << cert.expected_factor << ',' << cert.mean_ratio << ','
         << cert.standard_error << ',' << (cert.satisfied ? 1 : 0) << '\n';
    });
    return cert.satisfied ? kExitOk : kExitFailed;
  }
  throw rgd::UsageError("certify: method must be rgdr, rgdc, rgrk or rgrcd");
}

int cmd_trace_plot(const std::vector<std::string>& report_paths, const std::string& out) {
  std::vector<rgd::SolveReport> reports;
  for (const auto& p : report_paths) reports.push_back(rgd::read_report_json(p));
  emit(out, [&](std::ostream& os) { rgd::write_trace_plot_csv(os, reports); });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relaxed greedy deterministic row/column solvers and comparison methods"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  GenOptions gen;
  SolverOptions solver;
  std::string out;
  std::string problem_dir;
  std::string config_path;
  std::size_t repeats = 1;
  std::vector<std::string> report_paths;

  auto* gen_cmd = app.add_subcommand("gen", "generate a problem directory");
  add_gen_flags(gen_cmd, gen);
  gen_cmd->add_option("--seed", gen.seed, "generator seed")->capture_default_str();
  gen_cmd->add_option("--out", out, "output directory")->required();

  auto* solve_cmd = app.add_subcommand("solve", "run one method on a problem directory");
  solve_cmd->add_option("--problem", problem_dir, "problem directory")->required();
  add_solver_flags(solve_cmd, solver);
  solve_cmd->add_option("--seed", solver.seed, "solver seed")->capture_default_str();
  solve_cmd->add_option("--repeats", repeats, "runs to average")->capture_default_str();
  solve_cmd->add_option("--out", out, "directory for report.json, trace.csv, summary.csv");

  auto* bench_cmd = app.add_subcommand("bench", "run a method sweep from a JSON config");
  bench_cmd->add_option("--config", config_path, "bench config JSON")->required();
  bench_cmd->add_option("--out", out, "directory for bench.csv and trend.csv");

  auto* certify_cmd = app.add_subcommand("certify", "check per-step convergence bounds");
  certify_cmd->add_option("--problem", problem_dir, "problem directory (else generate)");
  add_gen_flags(certify_cmd, gen);
  add_solver_flags(certify_cmd, solver);
  certify_cmd->add_option("--seed", gen.seed, "generator and solver seed")->capture_default_str();
  certify_cmd->add_option("--repeats", repeats, "runs for randomized methods (>= 30)");
  certify_cmd->add_option("--out", out, "certificate CSV (default stdout)");

  auto* trace_cmd = app.add_subcommand("trace-plot", "merge reports into a long-format CSV");
  trace_cmd->add_option("--reports", report_paths, "report.json files");
  trace_cmd->add_option("--out", out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*solve_cmd) return cmd_solve(problem_dir, solver, repeats, out);
    if (*bench_cmd) return cmd_bench(config_path, out);
    if (*certify_cmd) {
      solver.seed = gen.seed;
      if (certify_cmd->count("--repeats") == 0) repeats = rgd::kMinStatisticalRuns;
      return cmd_certify(problem_dir, gen, solver, repeats, out);
    }
    if (*trace_cmd) return cmd_trace_plot(report_paths, out);
  } catch (const rgd::SizeGuardError& e) {
    std::cerr << "rgd: " << e.what() << '\n';
    return kExitSizeGuard;
  } catch (const rgd::UsageError& e) {
    std::cerr << "rgd: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "rgd: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}
