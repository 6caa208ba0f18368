#pragma once

#include <span>

#include "rgd/cgls.hpp"
#include "rgd/methods.hpp"
#include "rgd/random.hpp"
#include "rgd/selection.hpp"

namespace rgd {

// Column-action updates. Each step mutates `state` in place and keeps both
// state.r = b − A·x and state.y = Aᵀ·state.r; y drives selection.

/// x_j += yⱼ/‖βⱼ‖². Throws UsageError on a zero column.
StepOutcome cd_step(SolveState& state, const DenseMatrix& A, std::size_t col);

/// Multiple-column projection along ξ = Σ_{j∈V} yⱼ eⱼ:
/// h₁ = Σ yⱼ², c = Aξ, h₂ = ‖c‖², x_V += (h₁/h₂)·y_V, y −= (h₁/h₂)·Aᵀc.
/// AᵀA is never formed. Throws NumericalError when h₂ = 0 < h₁.
StepOutcome rgdc_step(SolveState& state, const DenseMatrix& A, const IndexSet& cols);

/// Samples j ∈ V with probability yⱼ²/Σ_{t∈V} y_t², then a coordinate step.
StepOutcome rgrcd_step(SolveState& state, const DenseMatrix& A, const IndexSet& cols, Rng& rng);

/// Simultaneous per-column updates x_j += yⱼ/‖βⱼ‖² for j ∈ J (no pseudoinverse).
StepOutcome amdcd_step(SolveState& state, const DenseMatrix& A, const IndexSet& cols);

/// x_τ += A_{:,τ}† r through CGLS, then r −= A_{:,τ}w.
StepOutcome rbcd_block_step(SolveState& state, const DenseMatrix& A, const IndexSet& cols,
                            const CglsConfig& cgls_config);

/// Driver for cd, rgrcd, rgdc, amdcd and rbcd.
SolveReport run_col_method(const DenseMatrix& A, std::span<const double> b,
                           std::span<const double> x_star, const SolveConfig& config);

}  // namespace rgd
