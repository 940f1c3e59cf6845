#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "fzdr/baselines.hpp"
#include "oracles.hpp"

using namespace fzdr;

namespace {

/// Largest deviation between matching columns after aligning each column's sign.
double column_sign_diff(const DenseMatrix& a, const oracle::Dense& b) {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    double same = 0.0, flipped = 0.0;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      same = std::max(same, std::abs(a(r, c) - b[r][c]));
      flipped = std::max(flipped, std::abs(a(r, c) + b[r][c]));
    }
    worst = std::max(worst, std::min(same, flipped));
  }
  return worst;
}

}  // namespace

TEST_CASE("truncated singular values match the Jacobi oracle") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 3 + rng() % 28, m = 2 + rng() % 19;
    const auto a = oracle::random_signed(rng, n, m, 0.35);
    const std::size_t k = 1 + rng() % std::min(n, m);
    const auto res = truncated_svd(a, k);
    const auto ref = oracle::singular_values(oracle::to_rows(a));
    for (std::size_t i = 0; i < k; ++i) {
      INFO("trial " << trial << " sigma " << i);
      CHECK(std::abs(res.S[i] - ref[i]) <= 1e-6 * std::max(1.0, ref[0]));
    }
    CHECK((res.U.transpose() * res.U - DenseMatrix::Identity(k, k)).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("svd sign convention: largest-magnitude entry of each right vector is positive") {
  std::mt19937_64 rng(8);
  const auto a = oracle::random_signed(rng, 20, 12, 0.5);
  const auto res = truncated_svd(a, 5);
  for (Eigen::Index c = 0; c < res.V.cols(); ++c) {
    Eigen::Index arg = 0;
    res.V.col(c).cwiseAbs().maxCoeff(&arg);
    CHECK(res.V(arg, c) > 0.0);
  }
}

TEST_CASE("randomized path recovers a low-rank spectrum above the exact threshold") {
  std::mt19937_64 rng(15);
  std::normal_distribution<double> g(0.0, 1.0);
  DenseMatrix left(200, 6), right(6, 150);
  for (Eigen::Index i = 0; i < left.size(); ++i) left.data()[i] = g(rng);
  for (Eigen::Index i = 0; i < right.size(); ++i) right.data()[i] = g(rng);
  const DenseMatrix dense = left * right;
  const auto a = SparseMatrix::from_dense(dense);
  const auto fast = truncated_svd(a, 6);
  Eigen::JacobiSVD<Eigen::MatrixXd> exact(dense);
  for (int i = 0; i < 6; ++i) CHECK(fast.S[i] == doctest::Approx(exact.singularValues()[i]).epsilon(1e-8));
  CHECK((fast.U * fast.S.asDiagonal() * fast.V.transpose() - dense).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("pca scores match the covariance eigendecomposition up to column sign") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 4 + rng() % 27, m = 2 + rng() % 19;
    const auto a = oracle::random_dtm(rng, n, m, 0.3, 1);
    const std::size_t k = 1 + rng() % std::min(n - 1, m);
    const auto res = pca_scores(a, k);
    const auto ref = oracle::pca_scores(oracle::to_rows(a), k);
    // Skip components whose eigenvalue is (nearly) repeated: the axis is not unique.
    const auto eig = oracle::jacobi(oracle::gram(oracle::to_rows(a), true));
    bool separated = true;
    for (std::size_t i = 0; i < k && i + 1 < eig.values.size(); ++i)
      if (eig.values[i] - eig.values[i + 1] < 1e-6 * (1.0 + eig.values[0])) separated = false;
    if (!separated) continue;
    INFO("trial " << trial);
    CHECK(column_sign_diff(res.scores, ref) < 1e-6);
    CHECK(res.column_means.size() == static_cast<Eigen::Index>(m));
  }
}

TEST_CASE("rank preconditions") {
  const auto a = fixture::worked_example();
  CHECK_THROWS_AS(truncated_svd(a, 0), std::invalid_argument);
  CHECK_THROWS_AS(truncated_svd(a, 6), std::invalid_argument);
  CHECK_THROWS_AS(pca_scores(a, 5), std::invalid_argument);
  CHECK_NOTHROW(pca_scores(a, 4));
}

TEST_CASE("fitted models map their own training rows back to the representation") {
  std::mt19937_64 rng(30);
  const auto a = oracle::random_dtm(rng, 40, 25, 0.2, 2);
  ReduceConfig cfg;
  for (auto method : {ReduceMethod::fc, ReduceMethod::svd, ReduceMethod::pca}) {
    INFO(to_string(method));
    const auto r = fit_reduction(a, method, 4, cfg);
    CHECK(r.representation.rows() == 40);
    CHECK(r.representation.cols() == 4);
    CHECK((apply_reduction(r.model, a) - r.representation).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(reduce(a, method, 4, cfg) == r.representation);
  }
}

TEST_CASE("method names") {
  for (auto m : {ReduceMethod::fc, ReduceMethod::svd, ReduceMethod::pca})
    CHECK(reduce_method_from_string(to_string(m)) == m);
  CHECK_THROWS_AS(reduce_method_from_string("lda"), std::invalid_argument);
}
