#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "rgd/linalg.hpp"

namespace rgd {

enum class MatrixKind { randn, smatrix };

std::string_view to_string(MatrixKind kind);
MatrixKind parse_matrix_kind(std::string_view name);

/// Everything needed to regenerate an instance bit-for-bit.
struct GeneratorSpec {
  MatrixKind kind = MatrixKind::randn;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t r = 0;  // smatrix rank
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  bool inconsistent = false;
  double noise_scale = 0.1;  // ‖δb‖ / ‖Ax*‖ for inconsistent systems
  std::uint64_t seed = 0;

  void validate() const;
};

struct ProblemInstance {
  DenseMatrix A;
  Vector b;
  /// Least-norm solution (consistent) or least-squares solution A†b.
  Vector x_star;
  bool consistent = true;
  std::uint64_t seed = 0;
  GeneratorSpec meta;
};

/// i.i.d. standard-normal m×n matrix.
DenseMatrix gen_randn(std::size_t m, std::size_t n, std::uint64_t seed);

/// A = UΣVᵀ with orthonormalized Gaussian U (m×r) and V (n×r); Σ holds r−2
/// uniform draws in (σ₂, σ₁) followed by σ₂ and σ₁.
DenseMatrix gen_smatrix(std::size_t m, std::size_t n, std::size_t r, double sigma1,
                        double sigma2, std::uint64_t seed);

/// Minimum-norm least-squares solution A†b by CGLS at tolerance 1e-12.
Vector least_squares_solution(const DenseMatrix& A, std::span<const double> b);

/// b = Ax* with standard-normal x*. When A is rank deficient x_star becomes A†b.
ProblemInstance make_consistent(DenseMatrix A, std::uint64_t seed);

/// b = Ax* + δb with Aᵀδb = 0 and ‖δb‖ = noise_scale·‖Ax*‖.
ProblemInstance make_inconsistent(DenseMatrix A, std::uint64_t seed, double noise_scale = 0.1);

ProblemInstance generate(const GeneratorSpec& spec);

/// Writes A.mtx, b.mtx, xstar.mtx and meta.json into `dir` (created if needed).
void save_problem(const ProblemInstance& problem, const std::filesystem::path& dir);
ProblemInstance load_problem(const std::filesystem::path& dir);

}  // namespace rgd
