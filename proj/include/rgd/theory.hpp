#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "rgd/linalg.hpp"
#include "rgd/methods.hpp"
#include "rgd/selection.hpp"

namespace rgd {

/// Slack added to every per-step bound check (absorbs SVD error and the
/// finite zero-loss threshold).
inline constexpr double kBoundSlack = 1e-8;

/// Certification replays every step with dense SVDs, so it is refused above
/// this many matrix entries as well as above the SVD size limit.
inline constexpr std::size_t kCertifyEntryLimit = 1'000'000;

/// Throws SizeGuardError when A is too large to certify.
void check_certify_size(std::size_t rows, std::size_t cols);
void check_certify_size(const DenseMatrix& A);

struct FactorComponents {
  double relaxation_weight = 0.0;    // τ_k (rows) or γ_k (columns)
  double active_energy = 0.0;        // ε_k = ‖A‖_F² − energy of the zero-loss set
  double zero_set_mass = 0.0;        // energy of the zero-loss set
  double sigma_min_A = 0.0;          // smallest nonzero singular value of A
  double sigma_max_sub = 0.0;        // largest singular value of the selected submatrix
  double set_energy_fraction = 0.0;  // Σ_{selected} ‖·‖² / ‖A‖_F²
};

struct ContractionBound {
  double factor = 1.0;
  FactorComponents parts;
};

/// Per-step factor for the deterministic row method:
/// 1 − τ_k · (Σ_{i∈U}‖αᵢ‖²/‖A‖_F²) · σ_min²(A)/σ_max²(A_{U,:}),
/// τ_k = θ₁‖A‖_F²/ε_k + (1 − θ₁), ε_k = ‖A‖_F² − Σ_{i∈Π_k}‖αᵢ‖².
/// `profile` must be the row-loss profile at the iterate that selected U.
/// Pass sigma_min_A to skip recomputing it. Throws SizeGuardError on large inputs.
ContractionBound rgdr_factor(const DenseMatrix& A, const IndexSet& rows,
                             const LossProfile& profile, double theta1,
                             std::optional<double> sigma_min_A = std::nullopt);

/// Column counterpart with γ_k, ε̃_k over columns and σ_max(A_{:,V}).
ContractionBound rgdc_factor(const DenseMatrix& A, const IndexSet& cols,
                             const LossProfile& profile, double theta2,
                             std::optional<double> sigma_min_A = std::nullopt);

/// Expected per-step factor of the randomized row method,
/// 1 − τ·σ_min²(A)/‖A‖_F² with τ = θ₁‖A‖_F²/ε + (1 − θ₁), ε = ‖A‖_F² − minᵢ‖αᵢ‖².
double rgrk_factor(const DenseMatrix& A, double theta1);
/// Same with ε over columns.
double rgrcd_factor(const DenseMatrix& A, double theta2);

/// Flops per deterministic row step: update (2s+1)(m+n) + s(3s+7)/2 plus
/// 4m+2 for building the index set, with s = |U_k|.
std::uint64_t flops_rgdr(std::uint64_t m, std::uint64_t n, std::uint64_t set_size);
/// Flops per deterministic column step: (2s+1)n + s(3s+11)/2 plus 4n+2.
std::uint64_t flops_rgdc(std::uint64_t n, std::uint64_t set_size);

struct BoundCertificate {
  std::size_t k = 0;
  double factor_theoretical = 1.0;
  double ratio_measured = 0.0;
  bool satisfied = false;
  FactorComponents components;
};

/// One certificate per recorded step of an rgdr or rgdc run. The measured
/// ratio is ‖x⁽ᵏ⁺¹⁾ − x*‖²/‖x⁽ᵏ⁾ − x*‖² (rows) or the same in the A-seminorm
/// (columns). Requires a report produced with record_trace.
std::vector<BoundCertificate> certify_run(const SolveReport& report, const DenseMatrix& A,
                                          std::span<const double> b,
                                          std::span<const double> x_star,
                                          const SolveConfig& config);

struct StatisticalCertificate {
  double expected_factor = 1.0;
  double mean_ratio = 0.0;  // mean over runs of the per-run geometric-mean step ratio
  double standard_error = 0.0;
  std::size_t runs = 0;
  bool satisfied = false;
};

/// Aggregate check for rgrk / rgrcd: mean geometric-mean contraction over
/// the runs must not exceed the expected factor by more than three standard
/// errors. Needs at least 30 recorded runs.
StatisticalCertificate certify_randomized(std::span<const SolveReport> reports,
                                          const DenseMatrix& A, std::span<const double> x_star,
                                          const SolveConfig& config);

inline constexpr std::size_t kMinStatisticalRuns = 30;

/// CSV with header: k,factor,ratio,satisfied,relaxation_weight,active_energy,
/// zero_set_mass,sigma_min_A,sigma_max_sub,set_energy_fraction
void write_certificates_csv(std::ostream& out, std::span<const BoundCertificate> certificates);

}  // namespace rgd
