#pragma once

#include <chrono>
#include <cmath>
#include <span>

#include "rgd/methods.hpp"

namespace rgd::detail {

// Bookkeeping shared by the row and column drivers: relative solution error,
// per-step traces, timing, plateau detection and residual-drift checks.
class RunTracker {
 public:
  RunTracker(const SolveConfig& config, std::span<const double> x_star, const SolveState& state)
      : config_(config), x_star_(x_star), start_(Clock::now()) {
    initial_error_ = distance(state.x, x_star_);
    report_.method = config.method;
    report_.theta = uses_theta(config.method) ? config.theta() : 0.0;
    report_.eta1 = config.selection.eta1;
    report_.eta2 = config.selection.eta2;
    report_.block_size = config.selection.block_size;
    report_.seed = config.seed;
    rse_ = initial_error_ > 0.0 ? 1.0 : 0.0;
    best_ = rse_;
    report_.rse_trace.push_back(rse_);
    report_.time_trace.push_back(0.0);
    if (config.record_trace) report_.iterates.push_back(state.x);
  }

  double rse() const noexcept { return rse_; }

  void record(const SolveState& state, const IndexSet& set) {
    rse_ = initial_error_ > 0.0 ? distance(state.x, x_star_) / initial_error_ : 0.0;
    report_.rse_trace.push_back(rse_);
    report_.set_size_trace.push_back(set.size());
    report_.time_trace.push_back(elapsed());
    if (config_.record_trace) {
      report_.iterates.push_back(state.x);
      report_.sets.push_back(set);
    }
    if (rse_ < 0.99 * best_) {
      best_ = rse_;
      last_improvement_ = state.k;
    }
  }

  bool plateaued(std::size_t k, std::size_t window) const noexcept {
    return k - last_improvement_ >= window;
  }

  void note_drift(double drift) {
    if (drift > report_.max_residual_drift) report_.max_residual_drift = drift;
  }

  SolveReport finish(Termination reason, const SolveState& state) {
    report_.wall_seconds = elapsed();
    report_.iterations = state.k;
    report_.final_rse = rse_;
    report_.termination = reason;
    return std::move(report_);
  }

 private:
  using Clock = std::chrono::steady_clock;

  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

  const SolveConfig& config_;
  std::span<const double> x_star_;
  Clock::time_point start_;
  double initial_error_ = 0.0;
  double rse_ = 1.0;
  double best_ = 1.0;
  std::size_t last_improvement_ = 0;
  SolveReport report_;
};

// ‖a − b‖ / max(scale, tiny)
inline double relative_gap(std::span<const double> a, std::span<const double> b, double scale) {
  return distance(a, b) / std::max(scale, 1e-300);
}

inline constexpr std::size_t kRefreshInterval = 100;

}  // namespace rgd::detail
