#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <span>

#include "rgd/linalg.hpp"

namespace rgd {

/// Anything CGLS can run on: y = M·x and x = Mᵀ·y into caller buffers.
template <class Op>
concept LinearOperator = requires(const Op& op, std::span<const double> in, std::span<double> out) {
  { op.rows() } -> std::convertible_to<std::size_t>;
  { op.cols() } -> std::convertible_to<std::size_t>;
  op.apply(in, out);
  op.apply_transpose(in, out);
};

class MatrixOperator {
 public:
  explicit MatrixOperator(const DenseMatrix& A) : A_(&A) {}
  std::size_t rows() const noexcept { return A_->rows(); }
  std::size_t cols() const noexcept { return A_->cols(); }
  void apply(std::span<const double> x, std::span<double> out) const { matvec_into(*A_, x, out); }
  void apply_transpose(std::span<const double> y, std::span<double> out) const {
    matvec_transpose_into(*A_, y, out);
  }

 private:
  const DenseMatrix* A_;
};

/// A_{I,:} without copying: rows `rows` of A.
class RowBlock {
 public:
  RowBlock(const DenseMatrix& A, std::span<const std::size_t> rows) : A_(&A), rows_(rows) {}
  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return A_->cols(); }
  void apply(std::span<const double> x, std::span<double> out) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) out[k] = dot(A_->row(rows_[k]), x);
  }
  void apply_transpose(std::span<const double> y, std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t k = 0; k < rows_.size(); ++k) axpy(y[k], A_->row(rows_[k]), out);
  }

 private:
  const DenseMatrix* A_;
  std::span<const std::size_t> rows_;
};

/// A_{:,J} without copying: columns `cols` of A.
class ColumnBlock {
 public:
  ColumnBlock(const DenseMatrix& A, std::span<const std::size_t> cols) : A_(&A), cols_(cols) {}
  std::size_t rows() const noexcept { return A_->rows(); }
  std::size_t cols() const noexcept { return cols_.size(); }
  void apply(std::span<const double> x, std::span<double> out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t k = 0; k < cols_.size(); ++k) axpy(x[k], A_->col(cols_[k]), out);
  }
  void apply_transpose(std::span<const double> y, std::span<double> out) const {
    for (std::size_t k = 0; k < cols_.size(); ++k) out[k] = dot(A_->col(cols_[k]), y);
  }

 private:
  const DenseMatrix* A_;
  std::span<const std::size_t> cols_;
};

}  // namespace rgd
