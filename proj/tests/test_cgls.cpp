#include "doctest.h"
#include "oracles.hpp"
#include "rgd/cgls.hpp"
#include "rgd/errors.hpp"
#include "rgd/linear_operator.hpp"

using namespace rgd;

TEST_CASE("cgls matches the SVD least-squares solution") {
  oracle::TestRng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto A = rng.matrix(40, 15);
    const auto b = rng.vector(40);
    CHECK(oracle::rel_diff(cgls(A, b), oracle::svd_solve(A, b)) < 1e-8);
  }
}

TEST_CASE("cgls returns the minimum-norm solution on rank-deficient input") {
  oracle::TestRng rng(22);
  const auto B = rng.matrix(30, 4);
  // duplicate every column: rank 4, 8 columns
  std::vector<double> values;
  for (std::size_t i = 0; i < 30; ++i) {
    for (int rep = 0; rep < 2; ++rep)
      for (std::size_t j = 0; j < 4; ++j) values.push_back(B(i, j));
  }
  const DenseMatrix A(30, 8, values);
  const auto b = rng.vector(30);
  CHECK(oracle::rel_diff(cgls(A, b), oracle::pinv_solve(A, b)) < 1e-8);
}

TEST_CASE("cgls on row and column blocks") {
  oracle::TestRng rng(23);
  const auto A = rng.matrix(20, 8);
  const std::vector<std::size_t> rows{1, 4, 7};
  const std::vector<std::size_t> cols{0, 2, 5, 6};
  const auto rhs_rows = rng.vector(3);
  const auto rhs_cols = rng.vector(20);
  CHECK(oracle::rel_diff(cgls(RowBlock(A, rows), rhs_rows),
                         oracle::pinv_solve(A.select_rows(rows), rhs_rows)) < 1e-8);
  CHECK(oracle::rel_diff(cgls(ColumnBlock(A, cols), rhs_cols),
                         oracle::pinv_solve(A.select_cols(cols), rhs_cols)) < 1e-8);
}

TEST_CASE("cgls reports an exhausted budget") {
  oracle::TestRng rng(24);
  const auto A = rng.matrix(30, 10);
  const auto b = rng.vector(30);
  try {
    cgls(A, b, CglsConfig{1e-12, 1});
    FAIL("expected SubsolverError");
  } catch (const SubsolverError& e) {
    CHECK(e.iterations() == 1);
    CHECK(e.relative_residual() > 1e-12);
  }
}

TEST_CASE("cgls handles a zero right-hand side and right-hand sides orthogonal to the range") {
  const auto A = DenseMatrix::from_rows({{1, 0}, {0, 1}, {0, 0}});
  CHECK(cgls(A, Vector{0, 0, 0}) == Vector{0, 0});
  const Vector w = cgls(A, Vector{1e-17, 0, 1});
  CHECK(std::abs(w[0]) <= 1e-16);
  CHECK(w[1] == 0.0);
}
