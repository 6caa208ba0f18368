#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rgd/methods.hpp"
#include "rgd/problems.hpp"

namespace rgd {

/// Problem shape of one bench cell; the seed comes from BenchConfig::seeds.
struct ProblemSize {
  MatrixKind kind = MatrixKind::randn;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t r = 0;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
};

struct BenchMethod {
  Method method = Method::rgdr;
  /// Overrides BenchConfig::thetas when set. Ignored for methods without θ.
  std::optional<std::vector<double>> thetas;
};

/// Bench configuration. JSON schema (all keys but methods, sizes optional):
///   methods:     ["rgdr", {"name": "rgrk", "thetas": [0.5]}, ...]
///   thetas:      [0.3, 0.5, 0.7, 0.9]          default [0.5]
///   sizes:       [{"kind": "randn", "m": 2000, "n": 100},
///                 {"kind": "smatrix", "m": 1000, "n": 50, "r": 50,
///                  "sigma1": 1.25, "sigma2": 1}]
///   seeds:       [1, 2, 3]                      default [1]
///   tol:         1e-4
///   max_iters:   1000000
///   repeats:     1     solver runs per seed for randomized methods
///   inconsistent: false
///   noise_scale: 0.1
///   eta1: 0.5, eta2: 0.1, block_size: 100
struct BenchConfig {
  std::vector<BenchMethod> methods;
  std::vector<double> thetas{0.5};
  std::vector<ProblemSize> sizes;
  std::vector<std::uint64_t> seeds{1};
  double tol = 1e-4;
  std::size_t max_iters = 1'000'000;
  std::size_t repeats = 1;
  bool inconsistent = false;
  double noise_scale = 0.1;
  double eta1 = 0.5;
  double eta2 = 0.1;
  std::size_t block_size = 100;

  /// Throws UsageError on an empty method list or invalid values.
  void validate() const;
  static BenchConfig from_json(std::string_view text);
};

/// One aggregated row per (method, theta, size). theta is absent for methods
/// without a relaxation parameter.
struct BenchRow {
  Method method = Method::rgdr;
  std::optional<double> theta;
  ProblemSize size;
  std::size_t runs = 0;
  std::size_t failures = 0;  // runs that threw; recorded and skipped
  std::size_t converged_runs = 0;
  double mean_iterations = 0.0;
  double mean_seconds = 0.0;
  double mean_final_rse = 0.0;
  std::string last_error;
};

/// IT ratio between a deterministic method and its randomized counterpart.
struct TrendRow {
  Method numerator = Method::rgdr;
  Method denominator = Method::rgrk;
  double theta = 0.0;
  ProblemSize size;
  double ratio = 0.0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::vector<TrendRow> trends;
};

/// Runs every cell sequentially. Output order follows the declaration order
/// of sizes, methods and thetas.
BenchResult run_bench(const BenchConfig& config);

void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows);
void write_trend_csv(std::ostream& out, std::span<const TrendRow> trends);

struct RepeatSummary {
  std::size_t runs = 0;
  std::size_t converged_runs = 0;
  double mean_iterations = 0.0;
  double mean_seconds = 0.0;
  double mean_final_rse = 0.0;
  std::vector<SolveReport> reports;
};

/// Runs `repeats` solves with solver seeds config.seed, config.seed + 1, ...
/// and averages IT, CPU and final RSE arithmetically.
RepeatSummary solve_repeated(const DenseMatrix& A, std::span<const double> b,
                             std::span<const double> x_star, const SolveConfig& config,
                             std::size_t repeats);

/// Mean IT with one decimal, e.g. "678.9".
std::string format_mean_iterations(double mean);

/// Long-format CSV method,theta,k,cumulative_seconds,rse sorted by method,
/// then theta, then k. An empty span yields the header only.
void write_trace_plot_csv(std::ostream& out, std::span<const SolveReport> reports);

}  // namespace rgd
