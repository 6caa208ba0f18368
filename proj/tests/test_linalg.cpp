#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "rgd/errors.hpp"
#include "rgd/linalg.hpp"
#include "rgd/matrix_market.hpp"

using namespace rgd;

TEST_CASE("dense matrix keeps both layouts and cached norms") {
  const auto A = DenseMatrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  CHECK(A.rows() == 2);
  CHECK(A.cols() == 3);
  CHECK(A(1, 2) == 6);
  CHECK(A.col(1)[0] == 2);
  CHECK(A.col(1)[1] == 5);
  CHECK(A.row_sqnorm(0) == 14);
  CHECK(A.col_sqnorm(2) == 45);
  CHECK(A.frob_sq() == 91);
  const auto T = A.transpose();
  CHECK(T(2, 1) == 6);
  const auto S = A.select_cols(std::vector<std::size_t>{2, 0});
  CHECK(S(1, 0) == 6);
  CHECK(S(1, 1) == 4);
}

TEST_CASE("dense matrix rejects bad input") {
  CHECK_THROWS_AS(DenseMatrix(0, 3, {}), UsageError);
  CHECK_THROWS_AS(DenseMatrix(2, 2, {1, 2, 3}), UsageError);
  CHECK_THROWS_AS(DenseMatrix(1, 2, {1, std::nan("")}), UsageError);
}

TEST_CASE("matvec and transpose agree with Eigen") {
  oracle::TestRng rng(3);
  const auto A = rng.matrix(17, 9);
  const auto x = rng.vector(9);
  const auto r = rng.vector(17);
  const Eigen::MatrixXd M = oracle::to_eigen(A);
  CHECK(oracle::rel_diff(matvec(A, x), oracle::from_eigen(M * oracle::to_eigen(x))) < 1e-14);
  CHECK(oracle::rel_diff(matvec_transpose(A, r),
                         oracle::from_eigen(M.transpose() * oracle::to_eigen(r))) < 1e-14);
}

TEST_CASE("singular values match the normal-equation eigenvalues") {
  oracle::TestRng rng(11);
  for (auto [m, n] : {std::pair{30, 12}, {12, 30}, {25, 25}}) {
    const auto A = rng.matrix(m, n);
    const auto sigma = singular_values(A);
    const auto ref = oracle::normal_eigen_singular_values(A);
    REQUIRE(sigma.size() == ref.size());
    for (std::size_t k = 0; k < sigma.size(); ++k) CHECK(std::abs(sigma[k] - ref[k]) <= 1e-8 * ref[k]);
  }
}

TEST_CASE("singular values drop the numerical null space") {
  // rank 2: third column is the sum of the first two
  const auto A = DenseMatrix::from_rows({{1, 0, 1}, {0, 1, 1}, {1, 1, 2}, {2, 0, 2}});
  const auto sigma = singular_values(A);
  CHECK(sigma.size() == 2);
  CHECK(sigma.front() >= sigma.back());
}

TEST_CASE("singular value size guard") {
  const DenseMatrix big(kSvdSizeLimit + 1, kSvdSizeLimit + 1,
                        std::vector<double>((kSvdSizeLimit + 1) * (kSvdSizeLimit + 1), 1.0));
  CHECK_THROWS_AS(singular_values(big), SizeGuardError);
}

TEST_CASE("orthonormalize columns") {
  oracle::TestRng rng(5);
  const auto Q = orthonormalize_columns(rng.matrix(40, 7));
  const Eigen::MatrixXd E = oracle::to_eigen(Q);
  CHECK((E.transpose() * E - Eigen::MatrixXd::Identity(7, 7)).norm() < 1e-13);
  const auto dependent = DenseMatrix::from_rows({{1, 2}, {2, 4}, {3, 6}});
  CHECK_THROWS_AS(orthonormalize_columns(dependent), GenerationError);
}

TEST_CASE("matrix market round trip is exact") {
  oracle::TestRng rng(9);
  const auto A = rng.matrix(6, 4);
  std::stringstream s;
  write_matrix_market(s, A);
  CHECK(s.str().rfind("%%MatrixMarket matrix array real general", 0) == 0);
  const auto B = read_matrix_market(s);
  CHECK(B.rows() == 6);
  CHECK(B.cols() == 4);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(B(i, j) == A(i, j));

  const Vector v{0.1, -2.5e-300, 3.0};
  std::stringstream t;
  write_matrix_market(t, std::span<const double>(v));
  CHECK(read_matrix_market_vector(t) == v);
}

TEST_CASE("matrix market reader rejects other formats") {
  std::stringstream coord("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 1.0\n");
  CHECK_THROWS_AS(read_matrix_market(coord), UsageError);
  std::stringstream shortfile("%%MatrixMarket matrix array real general\n% note\n2 2\n1\n2\n3\n");
  CHECK_THROWS_AS(read_matrix_market(shortfile), UsageError);
}
