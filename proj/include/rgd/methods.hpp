#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rgd/cgls.hpp"
#include "rgd/linalg.hpp"
#include "rgd/selection.hpp"

namespace rgd {

enum class Method {
  kaczmarz,  // cyclic single-row projection
  rgrk,      // relaxed greedy randomized Kaczmarz
  rgdr,      // relaxed greedy deterministic row
  gbk,       // greedy block Kaczmarz
  rbk,       // randomized block Kaczmarz over a row partition
  cd,        // cyclic coordinate descent
  rgrcd,     // relaxed greedy randomized coordinate descent
  rgdc,      // relaxed greedy deterministic column
  amdcd,     // accelerated max-distance coordinate descent
  rbcd,      // randomized block coordinate descent over a column partition
};

std::string_view to_string(Method method);
/// Throws UsageError for unknown names.
Method parse_method(std::string_view name);
std::vector<Method> all_methods();

bool is_row_method(Method method);
bool is_randomized(Method method);
/// Whether the method is parameterized by a relaxation θ.
bool uses_theta(Method method);

struct StopRule {
  double rse_tol = 1e-4;
  std::size_t max_iters = 1'000'000;
  /// Column methods stop once ‖Aᵀr‖ ≤ stationarity_tol·‖Aᵀb‖.
  double stationarity_tol = 1e-14;
  /// Row methods report a stall when the error has not dropped by 1% within
  /// this many iterations. Defaults to 10·m.
  std::optional<std::size_t> stall_window;

  void validate() const;
};

enum class Termination { converged, max_iters, stalled, stationary };
std::string_view to_string(Termination reason);
Termination parse_termination(std::string_view name);

struct SolveConfig {
  Method method = Method::rgdr;
  SelectionConfig selection;
  CglsConfig cgls;
  StopRule stop;
  std::uint64_t seed = 0;
  /// Keep every iterate and selected set (needed by certify_run).
  bool record_trace = false;
  /// Starting point; zero when absent.
  std::optional<Vector> x0;

  /// θ for this method (θ₁ for row methods, θ₂ for column methods).
  double theta() const;
  void set_theta(double theta);
};

/// Evolving iterate. r = b − Ax always; y = Aᵀr is maintained only by column
/// methods (empty otherwise).
struct SolveState {
  Vector x;
  Vector r;
  Vector y;
  std::size_t k = 0;
  std::size_t last_set_size = 0;

  static SolveState start(const DenseMatrix& A, std::span<const double> b,
                          std::span<const double> x0, bool track_normal_residual);
};

enum class StepStatus {
  advanced,
  converged,  // selected residual already zero; nothing to do
  stalled,    // projection denominator vanished (row methods on inconsistent data)
};

/// Outcome of one update. projection_weight is g₁/g₂ (rows) or h₁/h₂
/// (columns), 1/‖αᵢ‖² or 1/‖βⱼ‖² for single-index steps and 1 for exact
/// block projections.
struct StepOutcome {
  double projection_weight = 0.0;
  StepStatus status = StepStatus::advanced;

  bool converged() const noexcept { return status == StepStatus::converged; }
};

struct SolveReport {
  Method method = Method::rgdr;
  double theta = 0.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
  std::size_t block_size = 0;
  std::uint64_t seed = 0;

  std::size_t iterations = 0;
  double final_rse = 1.0;
  Vector rse_trace;                       // k = 0..iterations
  std::vector<std::size_t> set_size_trace;  // one per step
  Vector time_trace;                      // cumulative seconds, k = 0..iterations
  double wall_seconds = 0.0;
  Termination termination = Termination::max_iters;
  /// Largest relative gap between the recursively updated residual and a
  /// fresh b − Ax (column methods: between y and Aᵀ(b − Ax)).
  double max_residual_drift = 0.0;

  std::vector<Vector> iterates;  // record_trace only, k = 0..iterations
  std::vector<IndexSet> sets;    // record_trace only, one per step
};

/// Runs any method in the catalog. x_star is the reference solution used for
/// the relative solution error ‖x − x*‖/‖x⁰ − x*‖.
SolveReport run_method(const DenseMatrix& A, std::span<const double> b,
                       std::span<const double> x_star, const SolveConfig& config);

}  // namespace rgd
