#include "rgd/selection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rgd/errors.hpp"

namespace rgd {

IndexSet::IndexSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

IndexSet IndexSet::range(std::size_t first, std::size_t last) {
  std::vector<std::size_t> v;
  v.reserve(last > first ? last - first : 0);
  for (std::size_t i = first; i < last; ++i) v.push_back(i);
  return IndexSet(std::move(v));
}

bool IndexSet::contains(std::size_t index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

bool IndexSet::is_subset_of(const IndexSet& other) const {
  return std::includes(other.begin(), other.end(), begin(), end());
}

void SelectionConfig::validate() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(theta1)) throw UsageError("theta1 must lie in [0,1]");
  if (!in_unit(theta2)) throw UsageError("theta2 must lie in [0,1]");
  if (!(eta1 > 0.0 && eta1 <= 1.0)) throw UsageError("eta1 must lie in (0,1]");
  if (!(eta2 >= 0.0) || !std::isfinite(eta2)) throw UsageError("eta2 must be >= 0");
  if (block_size == 0) throw UsageError("block_size must be positive");
  if (!(zero_tol_rel >= 0.0)) throw UsageError("zero_tol_rel must be >= 0");
}

namespace {

LossProfile finish_profile(LossKind kind, Vector losses, std::span<const double> sqnorms,
                           double frob_sq, double zero_tol_rel) {
  LossProfile p;
  p.kind = kind;
  p.weights.resize(sqnorms.size());
  for (std::size_t i = 0; i < sqnorms.size(); ++i) p.weights[i] = sqnorms[i] / frob_sq;

  const auto it = std::max_element(losses.begin(), losses.end());
  p.argmax = static_cast<std::size_t>(it - losses.begin());
  p.max_loss = *it;
  p.weighted_mean = dot(p.weights, losses);

  p.zero_tol = std::max(zero_tol_rel * p.max_loss, kZeroLossFloor);
  std::vector<std::size_t> zeros;
  for (std::size_t i = 0; i < losses.size(); ++i) {
    if (losses[i] < p.zero_tol) zeros.push_back(i);
  }
  p.zero_set = IndexSet(std::move(zeros));
  p.losses = std::move(losses);
  return p;
}

IndexSet at_least(const Vector& losses, double threshold) {
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < losses.size(); ++i) {
    if (losses[i] >= threshold) chosen.push_back(i);
  }
  return IndexSet(std::move(chosen));
}

}  // namespace

LossProfile row_losses(const DenseMatrix& A, std::span<const double> r, double zero_tol_rel) {
  if (r.size() != A.rows()) throw UsageError("row_losses: residual length must equal rows");
  Vector losses(A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const double nrm = A.row_sqnorm(i);
    if (!(nrm > 0.0)) {
      throw UsageError("zero row " + std::to_string(i) + " unsupported by greedy selection");
    }
    losses[i] = r[i] * r[i] / nrm;
  }
  return finish_profile(LossKind::row, std::move(losses), A.row_sqnorms(), A.frob_sq(),
                        zero_tol_rel);
}

LossProfile column_losses_from_normal_residual(const DenseMatrix& A, std::span<const double> y,
                                               double zero_tol_rel) {
  if (y.size() != A.cols()) throw UsageError("column_losses: y length must equal cols");
  Vector losses(A.cols());
  for (std::size_t j = 0; j < A.cols(); ++j) {
    const double nrm = A.col_sqnorm(j);
    if (!(nrm > 0.0)) {
      throw UsageError("zero column " + std::to_string(j) + " unsupported by greedy selection");
    }
    losses[j] = y[j] * y[j] / nrm;
  }
  return finish_profile(LossKind::column, std::move(losses), A.col_sqnorms(), A.frob_sq(),
                        zero_tol_rel);
}

LossProfile column_losses(const DenseMatrix& A, std::span<const double> r, double zero_tol_rel) {
  return column_losses_from_normal_residual(A, matvec_transpose(A, r), zero_tol_rel);
}

std::optional<IndexSet> relaxed_greedy_set(const LossProfile& profile, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw UsageError("relaxed_greedy_set: theta outside [0,1]");
  if (!(profile.max_loss > 0.0)) return std::nullopt;
  // The convex combination never exceeds the max in exact arithmetic; the
  // clamp only removes rounding above it so the argmax stays selected.
  const double threshold = std::min(
      theta * profile.max_loss + (1.0 - theta) * profile.weighted_mean, profile.max_loss);
  return at_least(profile.losses, threshold);
}

std::optional<IndexSet> gbk_set(const LossProfile& profile, double eta1) {
  if (!(eta1 > 0.0 && eta1 <= 1.0)) throw UsageError("gbk_set: eta1 outside (0,1]");
  if (!(profile.max_loss > 0.0)) return std::nullopt;
  return at_least(profile.losses, eta1 * profile.max_loss);
}

std::optional<IndexSet> max_distance_set(const DenseMatrix& A, std::span<const double> y,
                                         double eta2) {
  if (y.size() != A.cols()) throw UsageError("max_distance_set: y length must equal cols");
  if (!(eta2 >= 0.0)) throw UsageError("max_distance_set: eta2 must be >= 0");
  Vector dist(A.cols());
  for (std::size_t j = 0; j < A.cols(); ++j) {
    const double nrm = A.col_sqnorm(j);
    if (!(nrm > 0.0)) {
      throw UsageError("zero column " + std::to_string(j) + " unsupported by greedy selection");
    }
    dist[j] = std::abs(y[j]) / std::sqrt(nrm);
  }
  const double d_max = *std::max_element(dist.begin(), dist.end());
  if (!(d_max > 0.0)) return std::nullopt;
  std::vector<std::size_t> chosen;
  for (std::size_t j = 0; j < dist.size(); ++j) {
    if (d_max - dist[j] <= eta2) chosen.push_back(j);
  }
  return IndexSet(std::move(chosen));
}

std::vector<IndexSet> make_partition(std::size_t count, std::size_t block_size) {
  if (count == 0) throw UsageError("make_partition: count must be >= 1");
  if (block_size == 0) throw UsageError("make_partition: block_size must be >= 1");
  std::vector<IndexSet> blocks;
  for (std::size_t first = 0; first < count; first += block_size) {
    blocks.push_back(IndexSet::range(first, std::min(first + block_size, count)));
  }
  return blocks;
}

}  // namespace rgd
