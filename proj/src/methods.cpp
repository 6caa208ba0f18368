#include "rgd/methods.hpp"

#include <array>
#include <string>
#include <utility>

#include "rgd/col_solvers.hpp"
#include "rgd/errors.hpp"
#include "rgd/row_solvers.hpp"

namespace rgd {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 10> kMethodNames{{
    {Method::kaczmarz, "kaczmarz"},
    {Method::rgrk, "rgrk"},
    {Method::rgdr, "rgdr"},
    {Method::gbk, "gbk"},
    {Method::rbk, "rbk"},
    {Method::cd, "cd"},
    {Method::rgrcd, "rgrcd"},
    {Method::rgdc, "rgdc"},
    {Method::amdcd, "amdcd"},
    {Method::rbcd, "rbcd"},
}};

constexpr std::array<std::pair<Termination, std::string_view>, 4> kTerminationNames{{
    {Termination::converged, "converged"},
    {Termination::max_iters, "max_iters"},
    {Termination::stalled, "stalled"},
    {Termination::stationary, "stationary"},
}};

}  // namespace

std::string_view to_string(Method method) {
  for (const auto& [m, name] : kMethodNames) {
    if (m == method) return name;
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (const auto& [m, n] : kMethodNames) {
    if (n == name) return m;
  }
  throw UsageError("unknown method '" + std::string(name) +
                   "' (expected kaczmarz, rgrk, rgdr, gbk, rbk, cd, rgrcd, rgdc, amdcd or rbcd)");
}

std::vector<Method> all_methods() {
  std::vector<Method> out;
  for (const auto& entry : kMethodNames) out.push_back(entry.first);
  return out;
}

bool is_row_method(Method method) {
  switch (method) {
    case Method::kaczmarz:
    case Method::rgrk:
    case Method::rgdr:
    case Method::gbk:
    case Method::rbk:
      return true;
    default:
      return false;
  }
}

bool is_randomized(Method method) {
  return method == Method::rgrk || method == Method::rbk || method == Method::rgrcd ||
         method == Method::rbcd;
}

bool uses_theta(Method method) {
  return method == Method::rgrk || method == Method::rgdr || method == Method::rgrcd ||
         method == Method::rgdc;
}

std::string_view to_string(Termination reason) {
  for (const auto& [t, name] : kTerminationNames) {
    if (t == reason) return name;
  }
  return "unknown";
}

Termination parse_termination(std::string_view name) {
  for (const auto& [t, n] : kTerminationNames) {
    if (n == name) return t;
  }
  throw UsageError("unknown termination reason '" + std::string(name) + "'");
}

void StopRule::validate() const {
  if (!(rse_tol >= 0.0)) throw UsageError("StopRule: rse_tol must be >= 0");
  if (max_iters == 0) throw UsageError("StopRule: max_iters must be positive");
  if (!(stationarity_tol >= 0.0)) throw UsageError("StopRule: stationarity_tol must be >= 0");
  if (stall_window && *stall_window == 0) throw UsageError("StopRule: stall_window must be positive");
}

double SolveConfig::theta() const {
  return is_row_method(method) ? selection.theta1 : selection.theta2;
}

void SolveConfig::set_theta(double theta) {
  selection.theta1 = theta;
  selection.theta2 = theta;
}

SolveState SolveState::start(const DenseMatrix& A, std::span<const double> b,
                             std::span<const double> x0, bool track_normal_residual) {
  if (b.size() != A.rows()) throw UsageError("right-hand side length must equal rows");
  if (x0.size() != A.cols()) throw UsageError("initial guess length must equal cols");
  SolveState s;
  s.x.assign(x0.begin(), x0.end());
  s.r = residual(A, b, s.x);
  if (track_normal_residual) s.y = matvec_transpose(A, s.r);
  return s;
}

SolveReport run_method(const DenseMatrix& A, std::span<const double> b,
                       std::span<const double> x_star, const SolveConfig& config) {
  return is_row_method(config.method) ? run_row_method(A, b, x_star, config)
                                      : run_col_method(A, b, x_star, config);
}

}  // namespace rgd
