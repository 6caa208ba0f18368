#pragma once

#include <span>

#include "rgd/cgls.hpp"
#include "rgd/methods.hpp"
#include "rgd/random.hpp"
#include "rgd/selection.hpp"

namespace rgd {

// Row-action updates. Each step mutates `state` in place and keeps
// state.r = b − A·state.x.

/// x += (rᵢ/‖αᵢ‖²)·αᵢ. Throws UsageError on a zero row.
StepOutcome kaczmarz_step(SolveState& state, const DenseMatrix& A, std::size_t row);

/// Multiple-row projection along Aᵀη with η = Σ_{i∈U} rᵢ eᵢ:
/// g₁ = Σ rᵢ², d = Aᵀη, g₂ = ‖d‖², x += (g₁/g₂)·d, r −= (g₁/g₂)·A·d.
/// AAᵀ is never formed. Returns StepStatus::stalled when g₂ = 0.
StepOutcome rgdr_step(SolveState& state, const DenseMatrix& A, const IndexSet& rows);

/// Samples i ∈ U with probability rᵢ²/Σ_{s∈U} r_s², then a Kaczmarz step.
StepOutcome rgrk_step(SolveState& state, const DenseMatrix& A, const IndexSet& rows, Rng& rng);

/// x += A_{I,:}† (b_I − A_{I,:}x) through CGLS; r is recomputed from scratch.
StepOutcome block_project_step(SolveState& state, const DenseMatrix& A,
                               std::span<const double> b, const IndexSet& rows,
                               const CglsConfig& cgls_config);

/// Driver for kaczmarz, rgrk, rgdr, gbk and rbk.
SolveReport run_row_method(const DenseMatrix& A, std::span<const double> b,
                           std::span<const double> x_star, const SolveConfig& config);

}  // namespace rgd
