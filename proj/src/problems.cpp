#include "rgd/problems.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include "json.hpp"
#include "rgd/cgls.hpp"
#include "rgd/errors.hpp"
#include "rgd/matrix_market.hpp"
#include "rgd/random.hpp"

namespace rgd {

namespace {

constexpr int kGenerationAttempts = 3;

DenseMatrix gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
  std::vector<double> values(rows * cols);
  for (double& v : values) v = rng.normal();
  return DenseMatrix(rows, cols, std::move(values));
}

DenseMatrix orthonormal_gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed,
                                 Stream stream) {
  for (int attempt = 0; attempt < kGenerationAttempts; ++attempt) {
    Rng rng(seed, stream, static_cast<std::uint64_t>(attempt));
    try {
      return orthonormalize_columns(gaussian(rows, cols, rng));
    } catch (const GenerationError&) {
      // redraw
    }
  }
  throw GenerationError("gen_smatrix: could not draw a full-rank Gaussian basis");
}

Vector standard_normal(std::size_t n, Rng& rng) {
  Vector v(n);
  for (double& e : v) e = rng.normal();
  return v;
}

// x* when A has full column rank, otherwise the least-norm solution A†b.
Vector reference_solution(const DenseMatrix& A, std::span<const double> b, const Vector& x_gen) {
  Vector x_ls = least_squares_solution(A, b);
  if (distance(x_ls, x_gen) <= 1e-8 * norm(x_gen)) return x_gen;
  return x_ls;
}

// Component of v orthogonal to range(A), by two least-squares projections.
Vector project_out_range(const DenseMatrix& A, Vector v) {
  for (int pass = 0; pass < 2; ++pass) {
    const Vector coeffs = least_squares_solution(A, v);
    const Vector fit = matvec(A, coeffs);
    axpy(-1.0, fit, v);
  }
  return v;
}

}  // namespace

std::string_view to_string(MatrixKind kind) {
  return kind == MatrixKind::randn ? "randn" : "smatrix";
}

MatrixKind parse_matrix_kind(std::string_view name) {
  if (name == "randn") return MatrixKind::randn;
  if (name == "smatrix") return MatrixKind::smatrix;
  throw UsageError("unknown matrix kind '" + std::string(name) + "' (expected randn or smatrix)");
}

void GeneratorSpec::validate() const {
  if (m == 0 || n == 0) throw UsageError("generator: m and n must be >= 1");
  if (kind == MatrixKind::smatrix) {
    if (r < 2 || r > std::min(m, n)) throw UsageError("smatrix: need 2 <= r <= min(m, n)");
    if (!(sigma1 > sigma2 && sigma2 > 0.0)) throw UsageError("smatrix: need sigma1 > sigma2 > 0");
  }
  if (inconsistent && !(noise_scale > 0.0)) {
    throw UsageError("generator: noise_scale must be positive");
  }
}

DenseMatrix gen_randn(std::size_t m, std::size_t n, std::uint64_t seed) {
  if (m == 0 || n == 0) throw UsageError("gen_randn: m and n must be >= 1");
  Rng rng(seed, Stream::matrix);
  return gaussian(m, n, rng);
}

DenseMatrix gen_smatrix(std::size_t m, std::size_t n, std::size_t r, double sigma1,
                        double sigma2, std::uint64_t seed) {
  GeneratorSpec{MatrixKind::smatrix, m, n, r, sigma1, sigma2}.validate();
  const DenseMatrix U = orthonormal_gaussian(m, r, seed, Stream::left_basis);
  const DenseMatrix V = orthonormal_gaussian(n, r, seed, Stream::right_basis);

  Rng rng(seed, Stream::spectrum);
  Vector sigma(r);
  for (std::size_t p = 0; p + 2 < r; ++p) sigma[p] = rng.uniform(sigma2, sigma1);
  sigma[r - 2] = sigma2;
  sigma[r - 1] = sigma1;

  std::vector<double> values(m * n, 0.0);
  Vector scaled(r);
  for (std::size_t i = 0; i < m; ++i) {
    const auto u = U.row(i);
    for (std::size_t p = 0; p < r; ++p) scaled[p] = u[p] * sigma[p];
    for (std::size_t k = 0; k < n; ++k) values[i * n + k] = dot(scaled, V.row(k));
  }
  return DenseMatrix(m, n, std::move(values));
}

Vector least_squares_solution(const DenseMatrix& A, std::span<const double> b) {
  return cgls(A, b, CglsConfig{1e-12, std::nullopt});
}

ProblemInstance make_consistent(DenseMatrix A, std::uint64_t seed) {
  Rng rng(seed, Stream::solution);
  const Vector x_gen = standard_normal(A.cols(), rng);
  Vector b = matvec(A, x_gen);
  Vector x_star = reference_solution(A, b, x_gen);
  ProblemInstance p{std::move(A), std::move(b), std::move(x_star), true, seed, {}};
  p.meta.m = p.A.rows();
  p.meta.n = p.A.cols();
  p.meta.seed = seed;
  return p;
}

ProblemInstance make_inconsistent(DenseMatrix A, std::uint64_t seed, double noise_scale) {
  if (!(noise_scale > 0.0)) throw UsageError("make_inconsistent: noise_scale must be positive");
  if (A.rows() <= A.cols()) {
    // Necessary (not sufficient) for a nontrivial null space of Aᵀ; the
    // projection check below catches the remaining cases.
    throw UsageError("make_inconsistent: need more rows than columns");
  }
  Rng rng(seed, Stream::solution);
  const Vector x_gen = standard_normal(A.cols(), rng);
  Vector b = matvec(A, x_gen);
  const double signal = norm(b);

  Vector noise;
  for (int attempt = 0; attempt < kGenerationAttempts && noise.empty(); ++attempt) {
    Rng noise_rng(seed, Stream::noise, static_cast<std::uint64_t>(attempt));
    const Vector draw = standard_normal(A.rows(), noise_rng);
    Vector candidate = project_out_range(A, draw);
    if (norm(candidate) > 1e-8 * norm(draw)) noise = std::move(candidate);
  }
  if (noise.empty()) {
    throw GenerationError("make_inconsistent: null space of A^T is numerically trivial");
  }
  const double scale = noise_scale * signal / norm(noise);
  for (double& e : noise) e *= scale;
  axpy(1.0, noise, b);

  Vector x_star = reference_solution(A, b, x_gen);
  ProblemInstance p{std::move(A), std::move(b), std::move(x_star), false, seed, {}};
  p.meta.m = p.A.rows();
  p.meta.n = p.A.cols();
  p.meta.seed = seed;
  p.meta.inconsistent = true;
  p.meta.noise_scale = noise_scale;
  return p;
}

ProblemInstance generate(const GeneratorSpec& spec) {
  spec.validate();
  DenseMatrix A = spec.kind == MatrixKind::randn
                      ? gen_randn(spec.m, spec.n, spec.seed)
                      : gen_smatrix(spec.m, spec.n, spec.r, spec.sigma1, spec.sigma2, spec.seed);
  ProblemInstance p = spec.inconsistent ? make_inconsistent(std::move(A), spec.seed, spec.noise_scale)
                                        : make_consistent(std::move(A), spec.seed);
  p.meta = spec;
  return p;
}

void save_problem(const ProblemInstance& problem, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_matrix_market(dir / "A.mtx", problem.A);
  write_matrix_market(dir / "b.mtx", std::span<const double>(problem.b));
  write_matrix_market(dir / "xstar.mtx", std::span<const double>(problem.x_star));

  const auto& g = problem.meta;
  nlohmann::ordered_json meta;
  meta["generator"] = to_string(g.kind);
  meta["m"] = problem.A.rows();
  meta["n"] = problem.A.cols();
  if (g.kind == MatrixKind::smatrix) {
    meta["r"] = g.r;
    meta["sigma1"] = g.sigma1;
    meta["sigma2"] = g.sigma2;
  }
  meta["seed"] = problem.seed;
  meta["consistent"] = problem.consistent;
  meta["noise_scale"] = problem.consistent ? 0.0 : g.noise_scale;
  std::ofstream out(dir / "meta.json", std::ios::binary);
  if (!out) throw UsageError("cannot write " + (dir / "meta.json").string());
  out << meta.dump(2) << '\n';
}

ProblemInstance load_problem(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw UsageError("problem directory not found: " + dir.string());
  }
  DenseMatrix A = read_matrix_market(dir / "A.mtx");
  Vector b = read_matrix_market_vector(dir / "b.mtx");
  Vector x_star = read_matrix_market_vector(dir / "xstar.mtx");
  if (b.size() != A.rows() || x_star.size() != A.cols()) {
    throw UsageError("problem directory " + dir.string() + ": inconsistent dimensions");
  }

  GeneratorSpec g;
  bool consistent = true;
  std::ifstream in(dir / "meta.json");
  if (in) {
    try {
      const auto meta = nlohmann::json::parse(in);
      g.kind = parse_matrix_kind(meta.value("generator", std::string("randn")));
      g.m = A.rows();
      g.n = A.cols();
      g.r = meta.value("r", std::size_t{0});
      g.sigma1 = meta.value("sigma1", 0.0);
      g.sigma2 = meta.value("sigma2", 0.0);
      g.seed = meta.value("seed", std::uint64_t{0});
      consistent = meta.value("consistent", true);
      g.inconsistent = !consistent;
      g.noise_scale = meta.value("noise_scale", 0.1);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("problem directory " + dir.string() + ": bad meta.json (" + e.what() + ")");
    }
  }
  return ProblemInstance{std::move(A), std::move(b), std::move(x_star), consistent, g.seed, g};
}

}  // namespace rgd
