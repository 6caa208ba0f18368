#include "rgd/row_solvers.hpp"

#include <string>

#include "rgd/errors.hpp"
#include "rgd/linear_operator.hpp"
#include "run_tracker.hpp"

namespace rgd {

StepOutcome kaczmarz_step(SolveState& state, const DenseMatrix& A, std::size_t row) {
  if (row >= A.rows()) throw UsageError("kaczmarz_step: row index out of range");
  const double nrm = A.row_sqnorm(row);
  if (!(nrm > 0.0)) {
    throw UsageError("zero row " + std::to_string(row) + " unsupported by greedy selection");
  }
  const double ri = state.r[row];
  if (ri == 0.0) return {0.0, StepStatus::converged};
  const double w = ri / nrm;
  axpy(w, A.row(row), state.x);
  const Vector a_alpha = matvec(A, A.row(row));
  axpy(-w, a_alpha, state.r);
  return {1.0 / nrm, StepStatus::advanced};
}

StepOutcome rgdr_step(SolveState& state, const DenseMatrix& A, const IndexSet& rows) {
  if (rows.empty()) throw UsageError("rgdr_step: empty row set");
  double g1 = 0.0;
  Vector d(A.cols(), 0.0);
  for (std::size_t i : rows) {
    const double ri = state.r[i];
    g1 += ri * ri;
    axpy(ri, A.row(i), d);
  }
  if (g1 == 0.0) return {0.0, StepStatus::converged};
  const double g2 = sqnorm(d);
  if (g2 == 0.0) return {0.0, StepStatus::stalled};
  const double g3 = g1 / g2;
  axpy(g3, d, state.x);
  const Vector ad = matvec(A, d);
  axpy(-g3, ad, state.r);
  return {g3, StepStatus::advanced};
}

StepOutcome rgrk_step(SolveState& state, const DenseMatrix& A, const IndexSet& rows, Rng& rng) {
  if (rows.empty()) throw UsageError("rgrk_step: empty row set");
  Vector weights(rows.size());
  double total = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    weights[k] = state.r[rows[k]] * state.r[rows[k]];
    total += weights[k];
  }
  if (total == 0.0) return {0.0, StepStatus::converged};
  return kaczmarz_step(state, A, rows[rng.discrete(weights)]);
}

StepOutcome block_project_step(SolveState& state, const DenseMatrix& A,
                               std::span<const double> b, const IndexSet& rows,
                               const CglsConfig& cgls_config) {
  if (rows.empty()) throw UsageError("block_project_step: empty row set");
  Vector rhs(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) rhs[k] = state.r[rows[k]];
  if (sqnorm(rhs) == 0.0) return {0.0, StepStatus::converged};
  const Vector w = cgls(RowBlock(A, rows.indices()), rhs, cgls_config);
  axpy(1.0, w, state.x);
  state.r = residual(A, b, state.x);
  return {1.0, StepStatus::advanced};
}

SolveReport run_row_method(const DenseMatrix& A, std::span<const double> b,
                           std::span<const double> x_star, const SolveConfig& config) {
  if (!is_row_method(config.method)) {
    throw UsageError("run_row_method: '" + std::string(to_string(config.method)) +
                     "' is not a row method");
  }
  config.selection.validate();
  config.stop.validate();
  config.cgls.validate();
  if (x_star.size() != A.cols()) throw UsageError("reference solution length must equal cols");

  const std::size_t m = A.rows();
  const Vector x0 = config.x0.value_or(Vector(A.cols(), 0.0));
  SolveState state = SolveState::start(A, b, x0, false);
  detail::RunTracker tracker(config, x_star, state);
  Rng rng(config.seed, Stream::solver);
  const std::size_t stall_window = config.stop.stall_window.value_or(10 * m);
  const double b_norm = norm(b);
  const auto blocks = config.method == Method::rbk
                          ? make_partition(m, config.selection.block_size)
                          : std::vector<IndexSet>{};
  const double theta = config.selection.theta1;

  auto refresh = [&] {
    const Vector fresh = residual(A, b, state.x);
    tracker.note_drift(detail::relative_gap(state.r, fresh, b_norm));
    state.r = fresh;
  };

  std::size_t idle_sweep = 0;  // consecutive no-op cyclic steps
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

    IndexSet set;
    StepOutcome outcome{0.0, StepStatus::converged};
    switch (config.method) {
      case Method::kaczmarz:
        set = IndexSet::single(state.k % m);
        outcome = kaczmarz_step(state, A, set[0]);
        if (outcome.converged()) {
          outcome.status = ++idle_sweep >= m ? StepStatus::converged : StepStatus::advanced;
        } else {
          idle_sweep = 0;
        }
        break;
      case Method::rgrk:
      case Method::rgdr:
      case Method::gbk: {
        const LossProfile profile = row_losses(A, state.r, config.selection.zero_tol_rel);
        const auto chosen = config.method == Method::gbk
                                ? gbk_set(profile, config.selection.eta1)
                                : relaxed_greedy_set(profile, theta);
        if (!chosen) break;
        set = *chosen;
        if (config.method == Method::rgrk) {
          outcome = rgrk_step(state, A, set, rng);
        } else if (config.method == Method::rgdr) {
          outcome = rgdr_step(state, A, set);
        } else {
          outcome = block_project_step(state, A, b, set, config.cgls);
        }
        break;
      }
      case Method::rbk:
        set = blocks[rng.uniform_index(blocks.size())];
        outcome = block_project_step(state, A, b, set, config.cgls);
        // An already satisfied block is a no-op draw, not convergence.
        if (outcome.converged()) outcome.status = StepStatus::advanced;
        break;
      default:
        break;
    }

    if (outcome.status == StepStatus::converged) {
      reason = tracker.rse() < config.stop.rse_tol ? Termination::converged
                                                   : Termination::stationary;
      break;
    }
    if (outcome.status == StepStatus::stalled) {
      reason = Termination::stalled;
      break;
    }

    ++state.k;
    state.last_set_size = set.size();
    if (state.k % detail::kRefreshInterval == 0) refresh();
    tracker.record(state, set);
    if (tracker.rse() >= config.stop.rse_tol && tracker.plateaued(state.k, stall_window)) {
      reason = Termination::stalled;
      break;
    }
  }
  refresh();
  return tracker.finish(reason, state);
}

}  // namespace rgd
