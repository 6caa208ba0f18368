#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "rgd/errors.hpp"
#include "rgd/problems.hpp"

using namespace rgd;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("rgd_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("randn generation is deterministic per seed") {
  const auto a = gen_randn(20, 5, 7);
  const auto b = gen_randn(20, 5, 7);
  const auto c = gen_randn(20, 5, 8);
  CHECK(std::equal(a.row_major().begin(), a.row_major().end(), b.row_major().begin()));
  CHECK(!std::equal(a.row_major().begin(), a.row_major().end(), c.row_major().begin()));
}

TEST_CASE("smatrix has the prescribed extreme singular values") {
  const auto A = gen_smatrix(50, 10, 10, 1.25, 1.0, 3);
  const auto sigma = oracle::normal_eigen_singular_values(A);
  REQUIRE(sigma.size() == 10);
  CHECK(std::abs(sigma.front() - 1.25) <= 1e-8);
  CHECK(std::abs(sigma.back() - 1.0) <= 1e-8);
  for (double s : sigma) CHECK((s >= 1.0 - 1e-8 && s <= 1.25 + 1e-8));

  const auto low_rank = gen_smatrix(30, 12, 4, 2.0, 0.5, 3);
  CHECK(oracle::normal_eigen_singular_values(low_rank).size() == 4);
}

TEST_CASE("generator parameter validation") {
  CHECK_THROWS_AS(gen_smatrix(10, 5, 6, 1.25, 1.0, 1), UsageError);
  CHECK_THROWS_AS(gen_smatrix(10, 5, 5, 1.0, 1.25, 1), UsageError);
  CHECK_THROWS_AS(gen_randn(0, 5, 1), UsageError);
  CHECK_THROWS_AS(make_inconsistent(gen_randn(5, 5, 1), 1, 0.1), UsageError);
}

TEST_CASE("consistent instance solves its own system") {
  const auto p = make_consistent(gen_randn(40, 10, 2), 2);
  CHECK(p.consistent);
  CHECK(oracle::rel_diff(matvec(p.A, p.x_star), p.b) <= 1e-12);
}

TEST_CASE("rank-deficient consistent instance uses the least-norm reference") {
  const auto p = make_consistent(gen_smatrix(40, 12, 5, 1.25, 1.0, 4), 4);
  CHECK(oracle::rel_diff(p.x_star, oracle::pinv_solve(p.A, p.b)) <= 1e-8);
}

TEST_CASE("inconsistent instance adds scaled null-space noise") {
  const auto A = gen_smatrix(120, 10, 10, 1.25, 1.0, 5);
  const auto clean = make_consistent(A, 5);
  const auto noisy = make_inconsistent(A, 5, 0.1);
  CHECK(!noisy.consistent);
  Vector delta = noisy.b;
  axpy(-1.0, clean.b, delta);
  CHECK(norm(matvec_transpose(A, delta)) <= 1e-10 * norm(delta));
  CHECK(std::abs(norm(delta) - 0.1 * norm(clean.b)) <= 1e-12 * norm(clean.b));
  CHECK(oracle::rel_diff(noisy.x_star, oracle::svd_solve(A, noisy.b)) <= 1e-8);
}

TEST_CASE("problem directories round trip and are byte-identical per seed") {
  GeneratorSpec spec{MatrixKind::smatrix, 30, 8, 8, 1.25, 1.0, true, 0.1, 17};
  const auto dir1 = scratch_dir("a");
  const auto dir2 = scratch_dir("b");
  save_problem(generate(spec), dir1);
  save_problem(generate(spec), dir2);
  for (const char* f : {"A.mtx", "b.mtx", "xstar.mtx", "meta.json"}) {
    CHECK(slurp(dir1 / f) == slurp(dir2 / f));
  }
  const auto loaded = load_problem(dir1);
  const auto original = generate(spec);
  CHECK(!loaded.consistent);
  CHECK(loaded.meta.kind == MatrixKind::smatrix);
  CHECK(loaded.meta.r == 8);
  CHECK(loaded.b == original.b);
  CHECK(loaded.x_star == original.x_star);
  CHECK(slurp(dir1 / "meta.json").find("\"consistent\": false") != std::string::npos);
  fs::remove_all(dir1);
  fs::remove_all(dir2);
  CHECK_THROWS_AS(load_problem(dir1), UsageError);
}
