#include "doctest.h"
#include "oracles.hpp"
#include "rgd/col_solvers.hpp"
#include "rgd/errors.hpp"
#include "rgd/methods.hpp"
#include "rgd/problems.hpp"
#include "rgd/random.hpp"

using namespace rgd;

namespace {

const DenseMatrix kDiag = DenseMatrix::from_rows({{1, 0}, {0, 2}});
const Vector kRhs{1, 4};

SolveState state_at(const DenseMatrix& A, const Vector& b, const Vector& x) {
  return SolveState::start(A, b, x, true);
}

SolveConfig col_config(Method method, double theta = 0.5) {
  SolveConfig c;
  c.method = method;
  c.set_theta(theta);
  return c;
}

}  // namespace

TEST_CASE("rgdc step by hand") {
  auto s = state_at(kDiag, kRhs, Vector{0, 0});
  CHECK(s.y == Vector{1, 8});
  // column losses [1, 16], mean 13, threshold 14.5 at theta 0.5
  const auto V = *relaxed_greedy_set(column_losses_from_normal_residual(kDiag, s.y), 0.5);
  CHECK(V == IndexSet::single(1));
  const auto out = rgdc_step(s, kDiag, V);
  CHECK(out.projection_weight == 64.0 / 256.0);
  CHECK(s.x == Vector{0, 2});
  CHECK(s.y == Vector{1, 0});
  const auto V2 = *relaxed_greedy_set(column_losses_from_normal_residual(kDiag, s.y), 0.5);
  CHECK(V2 == IndexSet::single(0));
  rgdc_step(s, kDiag, V2);
  CHECK(s.x == Vector{1, 2});
}

TEST_CASE("coordinate descent step") {
  auto s = state_at(kDiag, kRhs, Vector{0, 0});
  cd_step(s, kDiag, 1);
  CHECK(s.x == Vector{0, 2});
  CHECK(cd_step(s, kDiag, 1).converged());
}

TEST_CASE("singleton column steps coincide") {
  oracle::TestRng rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const auto A = rng.matrix(15, 6);
    const auto b = rng.vector(15);
    const auto x = rng.vector(6);
    const std::size_t j = rng.index(0, 5);
    auto c = state_at(A, b, x);
    auto g = state_at(A, b, x);
    auto blk = state_at(A, b, x);
    auto am = state_at(A, b, x);
    cd_step(c, A, j);
    rgdc_step(g, A, IndexSet::single(j));
    rbcd_block_step(blk, A, IndexSet::single(j), CglsConfig{});
    amdcd_step(am, A, IndexSet::single(j));
    CHECK(oracle::rel_diff(g.x, c.x) <= 1e-12);
    CHECK(oracle::rel_diff(blk.x, c.x) <= 1e-10);
    CHECK(oracle::rel_diff(am.x, c.x) <= 1e-12);
  }
}

TEST_CASE("block coordinate step over all columns reaches the least-squares solution") {
  oracle::TestRng rng(52);
  const auto A = rng.matrix(20, 5);
  const auto b = rng.vector(20);
  auto s = state_at(A, b, Vector(5, 0.0));
  rbcd_block_step(s, A, IndexSet::range(0, 5), CglsConfig{});
  CHECK(oracle::rel_diff(s.x, oracle::svd_solve(A, b)) <= 1e-8);

  const auto I = DenseMatrix::identity(2);
  auto t = state_at(I, Vector{1, 2}, Vector{0, 0});
  rbcd_block_step(t, I, IndexSet::range(0, 2), CglsConfig{});
  CHECK(oracle::rel_diff(t.x, Vector{1, 2}) <= 1e-14);
}

TEST_CASE("rgdc step throws when A xi vanishes") {
  // identical columns with opposite normal residual components
  const auto A = DenseMatrix::from_rows({{1, 1, 0}, {1, 1, 0}, {0, 0, 1}});
  SolveState s;
  s.x = Vector{0, 0, 0};
  s.r = Vector{1, 1, 1};
  s.y = Vector{1, -1, 1};
  CHECK_THROWS_AS(rgdc_step(s, A, IndexSet::range(0, 2)), NumericalError);
}

TEST_CASE("property: column Petrov-Galerkin orthogonality and residual decay") {
  oracle::TestRng rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const auto A = rng.matrix(30, 12);
    const auto b = rng.vector(30);
    const auto x_ls = oracle::svd_solve(A, b);
    const auto fit = matvec(A, x_ls);
    auto s = state_at(A, b, rng.vector(12));
    const auto V =
        *relaxed_greedy_set(column_losses_from_normal_residual(A, s.y), rng.uniform(0.0, 1.0));
    Vector xi(12, 0.0);
    for (std::size_t j : V) xi[j] = s.y[j];
    const double before = distance(matvec(A, s.x), fit);
    rgdc_step(s, A, V);
    CHECK(std::abs(dot(xi, s.y)) <= 1e-10 * norm(xi) * norm(s.y));
    CHECK(distance(matvec(A, s.x), fit) <= before * (1 + 1e-12));
    CHECK(oracle::rel_diff(s.y, matvec_transpose(A, residual(A, b, s.x))) <= 1e-8);
  }
}

TEST_CASE("rgdc hand trace through the driver") {
  auto c = col_config(Method::rgdc);
  c.record_trace = true;
  c.stop.rse_tol = 1e-14;
  const auto rep = run_method(kDiag, kRhs, Vector{1, 2}, c);
  CHECK(rep.iterations == 2);
  CHECK(rep.iterates[1] == Vector{0, 2});
  CHECK(rep.iterates[2] == Vector{1, 2});
}

TEST_CASE("every column method converges on an inconsistent system") {
  const auto p = generate({MatrixKind::smatrix, 300, 30, 30, 1.25, 1.0, true, 0.1, 4});
  for (Method m : {Method::cd, Method::rgrcd, Method::rgdc, Method::amdcd, Method::rbcd}) {
    auto c = col_config(m);
    c.selection.block_size = 10;
    c.seed = 8;
    const auto rep = run_method(p.A, p.b, p.x_star, c);
    INFO(to_string(m));
    CHECK(rep.termination == Termination::converged);
    CHECK(rep.final_rse < 1e-4);
    CHECK(rep.max_residual_drift <= 1e-8);
  }
}

TEST_CASE("column methods stop at a stationary point") {
  // b orthogonal to range(A): x = 0 already solves the least-squares problem
  const auto A = DenseMatrix::from_rows({{1, 0}, {0, 1}, {0, 0}});
  auto c = col_config(Method::rgdc);
  const auto rep = run_method(A, Vector{0, 0, 1}, Vector{1e-3, 0}, c);
  CHECK(rep.iterations == 0);
  CHECK(rep.termination == Termination::stationary);
}

TEST_CASE("rgdc iterates ignore null-space noise") {
  const auto A = gen_smatrix(200, 20, 20, 1.25, 1.0, 6);
  const auto noisy = make_inconsistent(A, 6, 0.1);
  const auto clean = make_consistent(A, 6);
  auto c = col_config(Method::rgdc, 0.3);
  c.record_trace = true;
  const auto a = run_method(noisy.A, noisy.b, noisy.x_star, c);
  const auto b = run_method(clean.A, clean.b, clean.x_star, c);
  REQUIRE(a.iterations == b.iterations);
  for (std::size_t k = 0; k <= a.iterations; ++k) {
    CHECK(distance(a.iterates[k], b.iterates[k]) <= 1e-10 * std::max(1.0, norm(b.iterates[k])));
  }
}
