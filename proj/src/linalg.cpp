#include "rgd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "rgd/errors.hpp"

namespace rgd {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw UsageError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                     " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), row_major_(std::move(row_major)) {
  if (rows_ == 0 || cols_ == 0) {
    throw UsageError("DenseMatrix: rows and cols must be at least 1");
  }
  if (row_major_.size() != rows_ * cols_) {
    throw UsageError("DenseMatrix: expected " + std::to_string(rows_ * cols_) + " entries, got " +
                     std::to_string(row_major_.size()));
  }
  if (!std::all_of(row_major_.begin(), row_major_.end(),
                   [](double v) { return std::isfinite(v); })) {
    throw UsageError("DenseMatrix: entries must be finite");
  }

  col_major_.resize(rows_ * cols_);
  row_sqnorms_.assign(rows_, 0.0);
  col_sqnorms_.assign(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const double v = row_major_[i * cols_ + j];
      col_major_[j * rows_ + i] = v;
      row_sqnorms_[i] += v * v;
    }
  }
  for (std::size_t j = 0; j < cols_; ++j) {
    col_sqnorms_[j] = sqnorm(col(j));
  }
  frob_sq_ = std::accumulate(row_sqnorms_.begin(), row_sqnorms_.end(), 0.0);
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows.begin()->size();
  std::vector<double> values;
  values.reserve(m * n);
  for (const auto& row : rows) {
    if (row.size() != n) {
      throw UsageError("DenseMatrix::from_rows: ragged rows");
    }
    values.insert(values.end(), row.begin(), row.end());
  }
  return DenseMatrix(m, n, std::move(values));
}

DenseMatrix DenseMatrix::from_column_major(std::size_t rows, std::size_t cols,
                                           std::span<const double> values) {
  if (values.size() != rows * cols) {
    throw UsageError("DenseMatrix::from_column_major: wrong number of values");
  }
  std::vector<double> row_major(rows * cols);
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) {
      row_major[i * cols + j] = values[j * rows + i];
    }
  }
  return DenseMatrix(rows, cols, std::move(row_major));
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  std::vector<double> values(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) values[i * n + i] = 1.0;
  return DenseMatrix(n, n, std::move(values));
}

DenseMatrix DenseMatrix::select_rows(std::span<const std::size_t> rows) const {
  std::vector<double> values;
  values.reserve(rows.size() * cols_);
  for (std::size_t i : rows) {
    if (i >= rows_) throw UsageError("select_rows: row index out of range");
    const auto r = row(i);
    values.insert(values.end(), r.begin(), r.end());
  }
  return DenseMatrix(rows.size(), cols_, std::move(values));
}

DenseMatrix DenseMatrix::select_cols(std::span<const std::size_t> cols) const {
  std::vector<double> values;
  values.reserve(cols.size() * rows_);
  for (std::size_t j : cols) {
    if (j >= cols_) throw UsageError("select_cols: column index out of range");
    const auto c = col(j);
    values.insert(values.end(), c.begin(), c.end());
  }
  return from_column_major(rows_, cols.size(), values);
}

DenseMatrix DenseMatrix::transpose() const {
  return DenseMatrix(cols_, rows_, col_major_);
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double sqnorm(std::span<const double> a) { return dot(a, a); }

double norm(std::span<const double> a) { return std::sqrt(sqnorm(a)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

void matvec_into(const DenseMatrix& A, std::span<const double> x, std::span<double> out) {
  require_same_length(x.size(), A.cols(), "matvec");
  require_same_length(out.size(), A.rows(), "matvec");
  for (std::size_t i = 0; i < A.rows(); ++i) out[i] = dot(A.row(i), x);
}

Vector matvec(const DenseMatrix& A, std::span<const double> x) {
  Vector out(A.rows());
  matvec_into(A, x, out);
  return out;
}

void matvec_transpose_into(const DenseMatrix& A, std::span<const double> r,
                           std::span<double> out) {
  require_same_length(r.size(), A.rows(), "matvec_transpose");
  require_same_length(out.size(), A.cols(), "matvec_transpose");
  for (std::size_t j = 0; j < A.cols(); ++j) out[j] = dot(A.col(j), r);
}

Vector matvec_transpose(const DenseMatrix& A, std::span<const double> r) {
  Vector out(A.cols());
  matvec_transpose_into(A, r, out);
  return out;
}

Vector residual(const DenseMatrix& A, std::span<const double> b, std::span<const double> x) {
  require_same_length(b.size(), A.rows(), "residual");
  Vector r = matvec(A, x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  return r;
}

DenseMatrix orthonormalize_columns(const DenseMatrix& M) {
  const std::size_t m = M.rows();
  const std::size_t r = M.cols();
  if (r > m) {
    throw GenerationError("orthonormalize_columns: more columns than rows");
  }
  std::vector<Vector> q(r);
  Vector diag(r);
  for (std::size_t j = 0; j < r; ++j) {
    const auto c = M.col(j);
    Vector v(c.begin(), c.end());
    // Two Gram–Schmidt passes restore orthogonality lost to cancellation.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < j; ++p) axpy(-dot(q[p], v), q[p], v);
    }
    diag[j] = norm(v);
    if (diag[j] > 0.0) {
      for (double& e : v) e /= diag[j];
    }
    q[j] = std::move(v);
  }
  const auto [lo, hi] = std::minmax_element(diag.begin(), diag.end());
  if (!(*lo > 1e-10 * *hi)) {
    throw GenerationError("orthonormalize_columns: columns are numerically rank deficient");
  }
  std::vector<double> col_major;
  col_major.reserve(m * r);
  for (const auto& v : q) col_major.insert(col_major.end(), v.begin(), v.end());
  return DenseMatrix::from_column_major(m, r, col_major);
}

Vector singular_values(const DenseMatrix& A) {
  const bool tall = A.rows() >= A.cols();
  const std::size_t k = tall ? A.cols() : A.rows();
  if (k > kSvdSizeLimit) {
    throw SizeGuardError("singular_values: min(rows, cols) = " + std::to_string(k) +
                         " exceeds the limit of " + std::to_string(kSvdSizeLimit) +
                         "; skip bound verification for this instance");
  }

  // Orthogonalize the k vectors of the short side by plane rotations
  // (Hestenes); their final norms are the singular values.
  std::vector<Vector> w(k);
  for (std::size_t p = 0; p < k; ++p) {
    const auto v = tall ? A.col(p) : A.row(p);
    w[p].assign(v.begin(), v.end());
  }
  Vector sq(k);
  for (std::size_t p = 0; p < k; ++p) sq[p] = sqnorm(w[p]);

  constexpr double kTol = 1e-15;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < k; ++p) {
      for (std::size_t q = p + 1; q < k; ++q) {
        const double alpha = sq[p];
        const double beta = sq[q];
        if (alpha == 0.0 || beta == 0.0) continue;
        const double gamma = dot(w[p], w[q]);
        if (std::abs(gamma) <= kTol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        auto& wp = w[p];
        auto& wq = w[q];
        for (std::size_t i = 0; i < wp.size(); ++i) {
          const double a = wp[i];
          const double b = wq[i];
          wp[i] = c * a - s * b;
          wq[i] = s * a + c * b;
        }
        sq[p] = sqnorm(wp);
        sq[q] = sqnorm(wq);
      }
    }
    if (!rotated) break;
  }

  Vector sigma(k);
  for (std::size_t p = 0; p < k; ++p) sigma[p] = std::sqrt(sq[p]);
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  const double cutoff = 1e-10 * sigma.front();
  while (!sigma.empty() && !(sigma.back() > cutoff)) sigma.pop_back();
  return sigma;
}

}  // namespace rgd
