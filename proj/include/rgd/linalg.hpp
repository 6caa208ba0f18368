#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rgd {

using Vector = std::vector<double>;

/// Dense real matrix, immutable after construction.
///
/// Entries are stored row-major together with an explicit transposed copy so
/// that row sweeps (Kaczmarz family) and column sweeps (coordinate descent
/// family) both read contiguous memory. Row and column squared norms and the
/// squared Frobenius norm are cached at construction.
class DenseMatrix {
 public:
  /// Takes ownership of `row_major` (rows*cols finite values).
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);

  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static DenseMatrix from_column_major(std::size_t rows, std::size_t cols,
                                       std::span<const double> values);
  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return row_major_[i * cols_ + j];
  }

  std::span<const double> row(std::size_t i) const noexcept {
    return {row_major_.data() + i * cols_, cols_};
  }
  std::span<const double> col(std::size_t j) const noexcept {
    return {col_major_.data() + j * rows_, rows_};
  }

  std::span<const double> row_major() const noexcept { return row_major_; }
  std::span<const double> col_major() const noexcept { return col_major_; }

  double row_sqnorm(std::size_t i) const noexcept { return row_sqnorms_[i]; }
  double col_sqnorm(std::size_t j) const noexcept { return col_sqnorms_[j]; }
  std::span<const double> row_sqnorms() const noexcept { return row_sqnorms_; }
  std::span<const double> col_sqnorms() const noexcept { return col_sqnorms_; }
  double frob_sq() const noexcept { return frob_sq_; }

  DenseMatrix select_rows(std::span<const std::size_t> rows) const;
  DenseMatrix select_cols(std::span<const std::size_t> cols) const;
  DenseMatrix transpose() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> row_major_;
  std::vector<double> col_major_;
  std::vector<double> row_sqnorms_;
  std::vector<double> col_sqnorms_;
  double frob_sq_ = 0.0;
};

double dot(std::span<const double> a, std::span<const double> b);
double sqnorm(std::span<const double> a);
double norm(std::span<const double> a);
// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
// ‖a - b‖
double distance(std::span<const double> a, std::span<const double> b);

/// A·x
Vector matvec(const DenseMatrix& A, std::span<const double> x);
void matvec_into(const DenseMatrix& A, std::span<const double> x, std::span<double> out);

/// Aᵀ·r
Vector matvec_transpose(const DenseMatrix& A, std::span<const double> r);
void matvec_transpose_into(const DenseMatrix& A, std::span<const double> r, std::span<double> out);

/// b − A·x
Vector residual(const DenseMatrix& A, std::span<const double> b, std::span<const double> x);

/// Orthonormal basis of the column span of `M` (Gram–Schmidt, two passes).
/// Throws GenerationError when M is numerically rank deficient, i.e. the
/// smallest R-diagonal magnitude is ≤ 1e-10 times the largest.
DenseMatrix orthonormalize_columns(const DenseMatrix& M);

/// Largest supported min(rows, cols) for singular_values.
inline constexpr std::size_t kSvdSizeLimit = 512;

/// Nonzero singular values in nonincreasing order (one-sided Jacobi).
///
/// Values below 1e-10·σ_max are treated as zero and dropped, so back() is the
/// smallest nonzero singular value. Throws SizeGuardError when
/// min(rows, cols) exceeds kSvdSizeLimit.
Vector singular_values(const DenseMatrix& A);

}  // namespace rgd
