#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "rgd/errors.hpp"
#include "rgd/linalg.hpp"
#include "rgd/linear_operator.hpp"

namespace rgd {

struct CglsConfig {
  /// Stop when ‖Mᵀr‖ ≤ rel_tol·max(‖Mᵀrhs‖, ‖M‖·‖r‖), r = rhs − Mw. The
  /// second term (with ‖M‖ estimated from the iteration) keeps right-hand
  /// sides almost orthogonal to range(M) from demanding accuracy below roundoff.
  double rel_tol = 1e-12;
  /// Defaults to 2·min(rows, cols) + 10 of the subproblem.
  std::optional<std::size_t> max_iters;

  void validate() const {
    if (!(rel_tol > 0.0)) throw UsageError("CglsConfig: rel_tol must be positive");
    if (max_iters && *max_iters == 0) throw UsageError("CglsConfig: max_iters must be >= 1");
  }
};

/// Conjugate gradients on the normal equations MᵀM w = Mᵀ rhs, started from
/// w = 0, so the result is the minimum-norm least-squares solution.
///
/// Throws SubsolverError when the iteration budget runs out.
template <LinearOperator Op>
Vector cgls(const Op& M, std::span<const double> rhs, const CglsConfig& cfg = {}) {
  cfg.validate();
  const std::size_t m = M.rows();
  const std::size_t n = M.cols();
  if (rhs.size() != m) throw UsageError("cgls: rhs length does not match operator rows");
  const std::size_t max_iters = cfg.max_iters.value_or(2 * std::min(m, n) + 10);

  Vector w(n, 0.0);
  Vector r(rhs.begin(), rhs.end());
  Vector s(n);
  M.apply_transpose(r, s);
  Vector p = s;
  Vector q(m);
  double gamma = sqnorm(s);
  const double s0 = std::sqrt(gamma);
  if (s0 == 0.0) return w;

  double norm_est = 0.0;  // lower bound on ‖M‖ from ‖Mp‖/‖p‖
  auto done = [&](double s_norm) {
    return s_norm <= cfg.rel_tol * std::max(s0, norm_est * norm(r));
  };
  double rel = 1.0;
  for (std::size_t it = 1; it <= max_iters; ++it) {
    M.apply(p, q);
    const double delta = sqnorm(q);
    norm_est = std::max(norm_est, std::sqrt(delta / sqnorm(p)));
    if (it == 1 && done(s0)) return w;
    if (delta == 0.0) {
      throw SubsolverError("cgls: search direction in the null space of the operator", it, rel);
    }
    const double alpha = gamma / delta;
    axpy(alpha, p, w);
    axpy(-alpha, q, r);
    M.apply_transpose(r, s);
    const double gamma_next = sqnorm(s);
    rel = std::sqrt(gamma_next) / s0;
    if (done(std::sqrt(gamma_next))) return w;
    const double beta = gamma_next / gamma;
    for (std::size_t j = 0; j < n; ++j) p[j] = s[j] + beta * p[j];
    gamma = gamma_next;
  }
  throw SubsolverError("cgls: no convergence after " + std::to_string(max_iters) +
                           " iterations (relative normal residual " + std::to_string(rel) + ")",
                       max_iters, rel);
}

inline Vector cgls(const DenseMatrix& M, std::span<const double> rhs, const CglsConfig& cfg = {}) {
  return cgls(MatrixOperator(M), rhs, cfg);
}

}  // namespace rgd
