#include "doctest.h"
#include "oracles.hpp"
#include "rgd/errors.hpp"
#include "rgd/methods.hpp"
#include "rgd/problems.hpp"
#include "rgd/random.hpp"
#include "rgd/row_solvers.hpp"

using namespace rgd;

namespace {

const DenseMatrix kDiag = DenseMatrix::from_rows({{1, 0}, {0, 2}});
const Vector kRhs{1, 4};

SolveState state_at(const DenseMatrix& A, const Vector& b, const Vector& x) {
  return SolveState::start(A, b, x, false);
}

SolveConfig row_config(Method method, double theta = 0.5) {
  SolveConfig c;
  c.method = method;
  c.set_theta(theta);
  return c;
}

}  // namespace

TEST_CASE("kaczmarz step by hand") {
  auto s = state_at(DenseMatrix::identity(2), Vector{1, 2}, Vector{0, 0});
  kaczmarz_step(s, DenseMatrix::identity(2), 1);
  CHECK(s.x == Vector{0, 2});

  auto t = state_at(kDiag, kRhs, Vector{0, 0});
  const auto out = kaczmarz_step(t, kDiag, 1);
  CHECK(t.x == Vector{0, 2});
  CHECK(out.projection_weight == 0.25);

  const auto again = kaczmarz_step(t, kDiag, 1);
  CHECK(again.converged());
  CHECK(t.x == Vector{0, 2});
}

TEST_CASE("rgdr step by hand") {
  auto s = state_at(kDiag, kRhs, Vector{0, 0});
  const auto out = rgdr_step(s, kDiag, IndexSet::single(1));
  CHECK(s.x == Vector{0, 2});
  CHECK(s.r == Vector{1, 0});
  CHECK(out.projection_weight == 16.0 / 64.0);

  const auto I = DenseMatrix::identity(2);
  auto t = state_at(I, Vector{2, 2}, Vector{0, 0});
  const auto one = rgdr_step(t, I, IndexSet::range(0, 2));
  CHECK(t.x == Vector{2, 2});
  CHECK(one.projection_weight == 1.0);
}

TEST_CASE("rgdr step reports a stall when the selected residual is outside range(A)") {
  // rows 0 and 1 are identical but with different right-hand sides
  const auto A = DenseMatrix::from_rows({{1, 1}, {1, 1}, {1, -1}});
  auto s = state_at(A, Vector{1, -1, 0}, Vector{0, 0});
  const auto out = rgdr_step(s, A, IndexSet::range(0, 2));
  CHECK(out.status == StepStatus::stalled);
}

TEST_CASE("singleton rgdr and block steps coincide with kaczmarz") {
  oracle::TestRng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto A = rng.matrix(12, 5);
    const auto b = rng.vector(12);
    const auto x = rng.vector(5);
    const std::size_t i = rng.index(0, 11);
    auto k = state_at(A, b, x);
    auto g = state_at(A, b, x);
    auto p = state_at(A, b, x);
    kaczmarz_step(k, A, i);
    rgdr_step(g, A, IndexSet::single(i));
    block_project_step(p, A, b, IndexSet::single(i), CglsConfig{});
    CHECK(oracle::rel_diff(g.x, k.x) <= 1e-12);
    CHECK(oracle::rel_diff(p.x, k.x) <= 1e-10);
  }
}

TEST_CASE("block projection by hand") {
  const auto I = DenseMatrix::identity(2);
  const Vector b{1, 2};
  auto s = state_at(I, b, Vector{0, 0});
  block_project_step(s, I, b, IndexSet::range(0, 2), CglsConfig{});
  CHECK(oracle::rel_diff(s.x, b) <= 1e-14);
}

TEST_CASE("rgrk sampling follows the squared residuals") {
  const auto I = DenseMatrix::identity(2);
  Rng rng(77);
  std::size_t picked_first = 0;
  const std::size_t draws = 100000;
  for (std::size_t k = 0; k < draws; ++k) {
    auto s = state_at(I, Vector{1, 4}, Vector{0, 0});
    rgrk_step(s, I, IndexSet::range(0, 2), rng);
    picked_first += s.x[0] != 0.0 ? 1 : 0;
  }
  CHECK(std::abs(static_cast<double>(picked_first) / draws - 1.0 / 17.0) <= 0.01);

  auto s = state_at(I, Vector{1, 4}, Vector{0, 0});
  rgrk_step(s, I, IndexSet::single(1), rng);
  CHECK(s.x == Vector{0, 4});
}

TEST_CASE("rgdr hand trace through the driver") {
  auto c = row_config(Method::rgdr);
  c.record_trace = true;
  c.stop.rse_tol = 1e-14;
  const auto rep = run_method(kDiag, kRhs, Vector{1, 2}, c);
  CHECK(rep.iterations == 2);
  CHECK(rep.termination == Termination::converged);
  CHECK(rep.iterates[1] == Vector{0, 2});
  CHECK(rep.iterates[2] == Vector{1, 2});
  CHECK(rep.set_size_trace == std::vector<std::size_t>{1, 1});
  CHECK(rep.rse_trace.front() == 1.0);
}

TEST_CASE("property: Petrov-Galerkin orthogonality and monotone decay") {
  oracle::TestRng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const auto A = rng.matrix(30, 12);
    const auto xs = rng.vector(12);
    const auto b = matvec(A, xs);
    auto s = state_at(A, b, rng.vector(12));
    const auto U = *relaxed_greedy_set(row_losses(A, s.r), rng.uniform(0.0, 1.0));
    Vector eta(30, 0.0);
    for (std::size_t i : U) eta[i] = s.r[i];
    const double before = distance(s.x, xs);
    rgdr_step(s, A, U);
    CHECK(std::abs(dot(eta, s.r)) <= 1e-10 * norm(eta) * norm(s.r));
    CHECK(distance(s.x, xs) <= before * (1 + 1e-12));
    CHECK(oracle::rel_diff(s.r, residual(A, b, s.x)) <= 1e-8);
  }
}

TEST_CASE("every row method converges on a consistent system") {
  const auto p = generate({MatrixKind::randn, 300, 40, 0, 0, 0, false, 0.1, 5});
  for (Method m : {Method::kaczmarz, Method::rgrk, Method::rgdr, Method::gbk, Method::rbk}) {
    auto c = row_config(m);
    c.selection.block_size = 20;
    c.seed = 3;
    const auto rep = run_method(p.A, p.b, p.x_star, c);
    INFO(to_string(m));
    CHECK(rep.termination == Termination::converged);
    CHECK(rep.final_rse < 1e-4);
    CHECK(rep.rse_trace.size() == rep.iterations + 1);
    CHECK(rep.max_residual_drift <= 1e-8);
  }
}

TEST_CASE("already converged input takes no iterations") {
  auto c = row_config(Method::rgdr);
  c.x0 = Vector{1, 2};
  const auto rep = run_method(kDiag, kRhs, Vector{1, 2}, c);
  CHECK(rep.iterations == 0);
  CHECK(rep.termination == Termination::converged);
}

TEST_CASE("row methods reach the least-norm solution on rank-deficient systems") {
  oracle::TestRng rng(43);
  const auto B = rng.matrix(60, 6);
  std::vector<double> values;
  for (std::size_t i = 0; i < 60; ++i) {
    for (int rep = 0; rep < 2; ++rep)
      for (std::size_t j = 0; j < 6; ++j) values.push_back(B(i, j));
  }
  const DenseMatrix A(60, 12, values);
  const auto b = matvec(A, rng.vector(12));
  const auto x_ln = oracle::pinv_solve(A, b);
  auto c = row_config(Method::rgdr);
  const auto rep = run_method(A, b, x_ln, c);
  CHECK(rep.termination == Termination::converged);
  CHECK(rep.final_rse < 1e-4);
}

TEST_CASE("row methods stall on inconsistent systems") {
  const auto p = generate({MatrixKind::randn, 200, 20, 0, 0, 0, true, 0.1, 9});
  auto c = row_config(Method::rgdr);
  const auto rep = run_method(p.A, p.b, p.x_star, c);
  CHECK(rep.termination == Termination::stalled);
  CHECK(rep.final_rse > 1e-4);
  CHECK(rep.max_residual_drift <= 1e-8);
}

TEST_CASE("row drivers reject column methods and bad lengths") {
  CHECK_THROWS_AS(run_row_method(kDiag, kRhs, Vector{1, 2}, row_config(Method::rgdc)), UsageError);
  CHECK_THROWS_AS(run_method(kDiag, Vector{1}, Vector{1, 2}, row_config(Method::rgdr)), UsageError);
}

TEST_CASE("randomized row runs are reproducible from the seed") {
  const auto p = generate({MatrixKind::randn, 100, 20, 0, 0, 0, false, 0.1, 2});
  auto c = row_config(Method::rgrk);
  c.seed = 12;
  const auto a = run_method(p.A, p.b, p.x_star, c);
  const auto b = run_method(p.A, p.b, p.x_star, c);
  CHECK(a.rse_trace == b.rse_trace);
  c.seed = 13;
  CHECK(run_method(p.A, p.b, p.x_star, c).rse_trace != a.rse_trace);
}
