#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rgd/linalg.hpp"

namespace rgd {

/// Sorted, duplicate-free list of row or column indices (0-based).
class IndexSet {
 public:
  IndexSet() = default;
  /// Sorts and deduplicates.
  explicit IndexSet(std::vector<std::size_t> indices);

  static IndexSet single(std::size_t index) { return IndexSet(std::vector<std::size_t>{index}); }
  static IndexSet range(std::size_t first, std::size_t last);  // [first, last)

  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  std::size_t operator[](std::size_t k) const noexcept { return indices_[k]; }
  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }
  std::span<const std::size_t> indices() const noexcept { return indices_; }
  bool contains(std::size_t index) const;
  bool is_subset_of(const IndexSet& other) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<std::size_t> indices_;
};

enum class LossKind { row, column };

/// Per-index losses ψᵢ = rᵢ²/‖αᵢ‖² (rows) or φⱼ = (βⱼᵀr)²/‖βⱼ‖² (columns),
/// with the energy weights ‖αᵢ‖²/‖A‖_F² (resp. ‖βⱼ‖²/‖A‖_F²).
struct LossProfile {
  LossKind kind = LossKind::row;
  Vector losses;
  Vector weights;
  double max_loss = 0.0;
  std::size_t argmax = 0;
  double weighted_mean = 0.0;
  /// Indices whose loss is below zero_tol; stands in for "loss exactly zero".
  IndexSet zero_set;
  double zero_tol = 0.0;
};

struct SelectionConfig {
  double theta1 = 0.5;  // row relaxation, [0,1]
  double theta2 = 0.5;  // column relaxation, [0,1]
  double eta1 = 0.5;    // greedy block Kaczmarz threshold, (0,1]
  double eta2 = 0.1;    // max-distance slack, >= 0
  std::size_t block_size = 100;
  double zero_tol_rel = 1e-14;

  void validate() const;
};

inline constexpr double kZeroLossFloor = 1e-300;

/// Throws UsageError on a zero row of A.
LossProfile row_losses(const DenseMatrix& A, std::span<const double> r,
                       double zero_tol_rel = 1e-14);

/// Column losses from r (computes y = Aᵀr). Throws UsageError on a zero column.
LossProfile column_losses(const DenseMatrix& A, std::span<const double> r,
                          double zero_tol_rel = 1e-14);

/// Column losses from a precomputed y = Aᵀr.
LossProfile column_losses_from_normal_residual(const DenseMatrix& A, std::span<const double> y,
                                               double zero_tol_rel = 1e-14);

/// {i : lossᵢ ≥ θ·max + (1−θ)·weighted_mean}. Returns nullopt when every loss
/// is zero (the iterate is already a solution and there is nothing to select).
std::optional<IndexSet> relaxed_greedy_set(const LossProfile& profile, double theta);

/// {i : lossᵢ ≥ η₁·max}; nullopt when converged.
std::optional<IndexSet> gbk_set(const LossProfile& profile, double eta1);

/// {j : D_max − Dⱼ ≤ η₂} with Dⱼ = |yⱼ|/‖βⱼ‖; nullopt when D_max = 0.
std::optional<IndexSet> max_distance_set(const DenseMatrix& A, std::span<const double> y,
                                         double eta2);

/// Contiguous blocks of `block_size` indices; the last block holds the remainder.
std::vector<IndexSet> make_partition(std::size_t count, std::size_t block_size);

}  // namespace rgd
