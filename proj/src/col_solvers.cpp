#include "rgd/col_solvers.hpp"

#include <string>

#include "rgd/errors.hpp"
#include "rgd/linear_operator.hpp"
#include "run_tracker.hpp"

namespace rgd {

namespace {

// r −= c; y −= Aᵀc
void apply_column_increment(SolveState& state, const DenseMatrix& A, std::span<const double> c) {
  axpy(-1.0, c, state.r);
  const Vector atc = matvec_transpose(A, c);
  axpy(-1.0, atc, state.y);
}

void require_nonzero_column(const DenseMatrix& A, std::size_t col) {
  if (col >= A.cols()) throw UsageError("column index out of range");
  if (!(A.col_sqnorm(col) > 0.0)) {
    throw UsageError("zero column " + std::to_string(col) + " unsupported by greedy selection");
  }
}

}  // namespace

StepOutcome cd_step(SolveState& state, const DenseMatrix& A, std::size_t col) {
  require_nonzero_column(A, col);
  const double nrm = A.col_sqnorm(col);
  const double yj = state.y[col];
  if (yj == 0.0) return {0.0, StepStatus::converged};
  const double w = yj / nrm;
  state.x[col] += w;
  Vector c(A.col(col).begin(), A.col(col).end());
  for (double& e : c) e *= w;
  apply_column_increment(state, A, c);
  return {1.0 / nrm, StepStatus::advanced};
}

StepOutcome rgdc_step(SolveState& state, const DenseMatrix& A, const IndexSet& cols) {
  if (cols.empty()) throw UsageError("rgdc_step: empty column set");
  double h1 = 0.0;
  Vector c(A.rows(), 0.0);
  for (std::size_t j : cols) {
    const double yj = state.y[j];
    h1 += yj * yj;
    axpy(yj, A.col(j), c);
  }
  if (h1 == 0.0) return {0.0, StepStatus::converged};
  const double h2 = sqnorm(c);
  if (h2 == 0.0) {
    throw NumericalError("rgdc_step: A·xi vanished although its normal residual did not");
  }
  const double h3 = h1 / h2;
  // x must use y^(k), so update it before y changes.
  for (std::size_t j : cols) state.x[j] += h3 * state.y[j];
  for (double& e : c) e *= h3;
  apply_column_increment(state, A, c);
  return {h3, StepStatus::advanced};
}

StepOutcome rgrcd_step(SolveState& state, const DenseMatrix& A, const IndexSet& cols, Rng& rng) {
  if (cols.empty()) throw UsageError("rgrcd_step: empty column set");
  Vector weights(cols.size());
  double total = 0.0;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    weights[k] = state.y[cols[k]] * state.y[cols[k]];
    total += weights[k];
  }
  if (total == 0.0) return {0.0, StepStatus::converged};
  return cd_step(state, A, cols[rng.discrete(weights)]);
}

StepOutcome amdcd_step(SolveState& state, const DenseMatrix& A, const IndexSet& cols) {
  if (cols.empty()) throw UsageError("amdcd_step: empty column set");
  Vector c(A.rows(), 0.0);
  bool moved = false;
  Vector delta(cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const std::size_t j = cols[k];
    require_nonzero_column(A, j);
    delta[k] = state.y[j] / A.col_sqnorm(j);
    moved = moved || delta[k] != 0.0;
    axpy(delta[k], A.col(j), c);
  }
  if (!moved) return {0.0, StepStatus::converged};
  for (std::size_t k = 0; k < cols.size(); ++k) state.x[cols[k]] += delta[k];
  apply_column_increment(state, A, c);
  return {1.0, StepStatus::advanced};
}

StepOutcome rbcd_block_step(SolveState& state, const DenseMatrix& A, const IndexSet& cols,
                            const CglsConfig& cgls_config) {
  if (cols.empty()) throw UsageError("rbcd_block_step: empty column set");
  const ColumnBlock block(A, cols.indices());
  const Vector w = cgls(block, state.r, cgls_config);
  if (sqnorm(w) == 0.0) return {0.0, StepStatus::converged};
  for (std::size_t k = 0; k < cols.size(); ++k) state.x[cols[k]] += w[k];
  Vector c(A.rows());
  block.apply(w, c);
  apply_column_increment(state, A, c);
  return {1.0, StepStatus::advanced};
}

SolveReport run_col_method(const DenseMatrix& A, std::span<const double> b,
                           std::span<const double> x_star, const SolveConfig& config) {
  if (is_row_method(config.method)) {
    throw UsageError("run_col_method: '" + std::string(to_string(config.method)) +
                     "' is not a column method");
  }
  config.selection.validate();
  config.stop.validate();
  config.cgls.validate();
  if (x_star.size() != A.cols()) throw UsageError("reference solution length must equal cols");

  const std::size_t n = A.cols();
  const Vector x0 = config.x0.value_or(Vector(n, 0.0));
  SolveState state = SolveState::start(A, b, x0, true);
  detail::RunTracker tracker(config, x_star, state);
  Rng rng(config.seed, Stream::solver);
  const double atb_norm = norm(matvec_transpose(A, b));
  const double b_norm = norm(b);
  const auto blocks = config.method == Method::rbcd
                          ? make_partition(n, config.selection.block_size)
                          : std::vector<IndexSet>{};
  const double theta = config.selection.theta2;

  auto refresh = [&] {
    const Vector r = residual(A, b, state.x);
    const Vector y = matvec_transpose(A, r);
    tracker.note_drift(detail::relative_gap(state.y, y, atb_norm));
    tracker.note_drift(detail::relative_gap(state.r, r, b_norm));
    state.r = r;
    state.y = y;
  };

  std::size_t idle_sweep = 0;
  Termination reason = Termination::max_iters;
  while (true) {
    if (tracker.rse() < config.stop.rse_tol) {
      reason = Termination::converged;
      break;
    }
    if (state.k >= config.stop.max_iters) {
      reason = Termination::max_iters;
      break;
    }
    if (norm(state.y) <= config.stop.stationarity_tol * atb_norm) {
      reason = Termination::stationary;
      break;
    }

    IndexSet set;
    StepOutcome outcome{0.0, StepStatus::converged};
    switch (config.method) {
      case Method::cd:
        set = IndexSet::single(state.k % n);
        outcome = cd_step(state, A, set[0]);
        if (outcome.converged()) {
          outcome.status = ++idle_sweep >= n ? StepStatus::converged : StepStatus::advanced;
        } else {
          idle_sweep = 0;
        }
        break;
      case Method::rgrcd:
      case Method::rgdc: {
        const LossProfile profile =
            column_losses_from_normal_residual(A, state.y, config.selection.zero_tol_rel);
        const auto chosen = relaxed_greedy_set(profile, theta);
        if (!chosen) break;
        set = *chosen;
        outcome = config.method == Method::rgdc ? rgdc_step(state, A, set)
                                                : rgrcd_step(state, A, set, rng);
        break;
      }
      case Method::amdcd: {
        const auto chosen = max_distance_set(A, state.y, config.selection.eta2);
        if (!chosen) break;
        set = *chosen;
        outcome = amdcd_step(state, A, set);
        break;
      }
      case Method::rbcd:
        set = blocks[rng.uniform_index(blocks.size())];
        outcome = rbcd_block_step(state, A, set, config.cgls);
        if (outcome.converged()) outcome.status = StepStatus::advanced;
        break;
      default:
        break;
    }

    if (outcome.status != StepStatus::advanced) {
      reason = tracker.rse() < config.stop.rse_tol ? Termination::converged
                                                   : Termination::stationary;
      break;
    }

    ++state.k;
    state.last_set_size = set.size();
    if (state.k % detail::kRefreshInterval == 0) refresh();
    tracker.record(state, set);
  }
  refresh();
  return tracker.finish(reason, state);
}

}  // namespace rgd
