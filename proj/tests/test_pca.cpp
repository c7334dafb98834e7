#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "eigen_oracle.hpp"
#include "test_util.hpp"
#include "tmpca/errors.hpp"
#include "tmpca/pca.hpp"

using namespace tmpca;
using tmpca::testing::oracle_eigendecomposition;
using tmpca::testing::random_matrix;
using tmpca::testing::random_symmetric;

namespace {

void check_close(double actual, double expected, double tolerance) {
  CHECK(std::abs(actual - expected) <= tolerance);
}

}  // namespace

TEST_CASE("covariance of identical rows is zero") {
  const Matrix data{{1, 2}, {1, 2}};
  const CovarianceResult r = covariance_matrix(data);
  CHECK(r.mean == std::vector<double>{1, 2});
  CHECK(r.cov == Matrix(2, 2, 0.0));
}

TEST_CASE("covariance hand example") {
  const Matrix data{{1, 2}, {3, 6}};
  const CovarianceResult r = covariance_matrix(data);
  CHECK(r.mean == std::vector<double>{2, 4});
  CHECK(r.cov == Matrix{{1, 2}, {2, 4}});
}

TEST_CASE("covariance of a single row is zero") {
  const Matrix data{{5, 7, 9}};
  const CovarianceResult r = covariance_matrix(data);
  CHECK(r.mean == std::vector<double>{5, 7, 9});
  CHECK(r.cov == Matrix(3, 3, 0.0));
}

TEST_CASE("covariance rejects bad input") {
  CHECK_THROWS_AS(covariance_matrix(Matrix{}), InvalidInputError);
  Matrix bad{{1.0, 2.0}};
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(covariance_matrix(bad), InvalidInputError);
}

TEST_CASE("covariance is exactly symmetric on random data") {
  SplitMix64 rng(11);
  const Matrix data = random_matrix(13, 7, rng, 3.0);
  const CovarianceResult r = covariance_matrix(data);
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = 0; j < 7; ++j) {
      CHECK(r.cov(i, j) == r.cov(j, i));
    }
  }
}

TEST_CASE("eigendecomposition of the identity") {
  const Matrix s = Matrix::identity(3);
  const EigenDecomposition e = symmetric_eigendecomposition(s);
  CHECK(e.eigenvalues == std::vector<double>{1, 1, 1});
  CHECK(e.eigenvectors == Matrix::identity(3));
}

TEST_CASE("eigendecomposition of a diagonal matrix orders ties by index") {
  const Matrix s{{3, 0, 0}, {0, 1, 0}, {0, 0, 2}};
  const EigenDecomposition e = symmetric_eigendecomposition(s);
  CHECK(e.eigenvalues == std::vector<double>{3, 2, 1});
  CHECK(e.eigenvectors == Matrix{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}});
}

TEST_CASE("eigendecomposition closed-form 2x2") {
  const Matrix s{{2, 1}, {1, 2}};
  const EigenDecomposition e = symmetric_eigendecomposition(s);
  REQUIRE(e.eigenvalues.size() == 2);
  check_close(e.eigenvalues[0], 3.0, 1e-12);
  check_close(e.eigenvalues[1], 1.0, 1e-12);
  const double inv_sqrt2 = std::sqrt(0.5);
  check_close(e.eigenvectors(0, 0), inv_sqrt2, 1e-12);
  check_close(e.eigenvectors(0, 1), inv_sqrt2, 1e-12);
  check_close(e.eigenvectors(1, 0), inv_sqrt2, 1e-12);
  check_close(e.eigenvectors(1, 1), -inv_sqrt2, 1e-12);
}

TEST_CASE("eigendecomposition keeps genuine negative eigenvalues") {
  const Matrix s{{0, 1}, {1, 0}};
  const EigenDecomposition e = symmetric_eigendecomposition(s);
  check_close(e.eigenvalues[0], 1.0, 1e-12);
  check_close(e.eigenvalues[1], -1.0, 1e-12);
}

TEST_CASE("eigendecomposition rejects bad input") {
  CHECK_THROWS_AS(symmetric_eigendecomposition(Matrix{}), ShapeError);
  CHECK_THROWS_AS(symmetric_eigendecomposition(Matrix(2, 3)), ShapeError);
  CHECK_THROWS_AS(symmetric_eigendecomposition(Matrix{{1, 2}, {3, 4}}),
                  InvalidInputError);
}

TEST_CASE("eigendecomposition satisfies the eigen equation on random input") {
  SplitMix64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t k = 1 + rng.below(8);
    const Matrix s = random_symmetric(k, rng, 2.0);
    const EigenDecomposition e = symmetric_eigendecomposition(s);

    for (std::size_t i = 0; i < k; ++i) {
      // Residual ||S v - lambda v||.
      double res_sq = 0.0;
      for (std::size_t row = 0; row < k; ++row) {
        double sv = 0.0;
        for (std::size_t col = 0; col < k; ++col) {
          sv += s(row, col) * e.eigenvectors(i, col);
        }
        const double r = sv - e.eigenvalues[i] * e.eigenvectors(i, row);
        res_sq += r * r;
      }
      CHECK(std::sqrt(res_sq) <= 1e-7 * (1.0 + std::abs(e.eigenvalues[i])));

      if (i > 0) CHECK(e.eigenvalues[i - 1] >= e.eigenvalues[i]);

      // Rows orthonormal.
      for (std::size_t j = i; j < k; ++j) {
        double dot = 0.0;
        for (std::size_t col = 0; col < k; ++col) {
          dot += e.eigenvectors(i, col) * e.eigenvectors(j, col);
        }
        check_close(dot, i == j ? 1.0 : 0.0, 1e-8);
      }

      // Sign convention: largest-magnitude entry positive.
      double best = 0.0;
      std::size_t pick = 0;
      for (std::size_t col = 0; col < k; ++col) {
        if (std::abs(e.eigenvectors(i, col)) > best) {
          best = std::abs(e.eigenvectors(i, col));
          pick = col;
        }
      }
      CHECK(e.eigenvectors(i, pick) > 0.0);
    }
  }
}

TEST_CASE("eigendecomposition matches the independent oracle") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t k = 1 + rng.below(6);
    const Matrix s = random_symmetric(k, rng, 2.0);
    const EigenDecomposition ours = symmetric_eigendecomposition(s);
    const auto reference = oracle_eigendecomposition(s);

    for (std::size_t i = 0; i < k; ++i) {
      const double tol = 1e-6 * (1.0 + std::abs(reference.eigenvalues[i]));
      check_close(ours.eigenvalues[i], reference.eigenvalues[i], tol);
      for (std::size_t col = 0; col < k; ++col) {
        check_close(ours.eigenvectors(i, col), reference.eigenvectors(i, col),
                    1e-5);
      }
    }
  }
}

TEST_CASE("pca_fit hand example") {
  const Matrix data{{1, 2}, {3, 6}};
  const PcaTransform t = pca_fit(data, 1);
  CHECK(t.in_dim == 2);
  CHECK(t.out_dim == 1);
  CHECK(t.mean == std::vector<double>{2, 4});
  REQUIRE(t.eigenvalues.size() == 1);
  check_close(t.eigenvalues[0], 5.0, 1e-12);
  check_close(t.basis(0, 0), 1.0 / std::sqrt(5.0), 1e-12);
  check_close(t.basis(0, 1), 2.0 / std::sqrt(5.0), 1e-12);
}

TEST_CASE("pca_fit on identical rows yields zero spectrum and identity basis") {
  const Matrix data{{4, 5, 6}, {4, 5, 6}, {4, 5, 6}};
  const PcaTransform t = pca_fit(data, 2);
  CHECK(t.eigenvalues == std::vector<double>{0, 0});
  CHECK(t.basis == Matrix{{1, 0, 0}, {0, 1, 0}});
}

TEST_CASE("pca_fit validates out_dim") {
  const Matrix data{{1, 2}, {3, 4}};
  CHECK_THROWS_AS(pca_fit(data, 0), InvalidArgumentError);
  CHECK_THROWS_AS(pca_fit(data, 3), InvalidArgumentError);
}

TEST_CASE("full-rank pca reconstructs its input") {
  SplitMix64 rng(41);
  const Matrix data = random_matrix(8, 5, rng, 2.0);
  const PcaTransform t = pca_fit(data, 5);
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const std::vector<double> projected = pca_apply(t, data.row(r));
    // x ~ mean + basis^T * projected
    for (std::size_t c = 0; c < 5; ++c) {
      double rebuilt = t.mean[c];
      for (std::size_t i = 0; i < 5; ++i) {
        rebuilt += t.basis(i, c) * projected[i];
      }
      check_close(rebuilt, data(r, c), 1e-8);
    }
  }
}

TEST_CASE("pca_apply hand example and mean projection") {
  const Matrix data{{1, 2}, {3, 6}};
  const PcaTransform t = pca_fit(data, 1);

  const std::vector<double> at_mean = pca_apply(t, t.mean);
  check_close(at_mean[0], 0.0, 1e-15);

  const std::vector<double> lo = pca_apply(t, std::vector<double>{1, 2});
  const std::vector<double> hi = pca_apply(t, std::vector<double>{3, 6});
  check_close(lo[0], -std::sqrt(5.0), 1e-12);
  check_close(hi[0], std::sqrt(5.0), 1e-12);

  CHECK_THROWS_AS(pca_apply(t, std::vector<double>{1, 2, 3}), ShapeError);
}

TEST_CASE("single-sample full-rank transform sends the sample to zero") {
  const Matrix data{{2, -3, 7}};
  const PcaTransform t = pca_fit(data, 3);
  const std::vector<double> out = pca_apply(t, data.row(0));
  for (double v : out) CHECK(v == 0.0);
}

TEST_CASE("pca_apply_batch matches row-wise apply") {
  SplitMix64 rng(51);
  const Matrix data = random_matrix(9, 4, rng);
  const PcaTransform t = pca_fit(data, 3);

  const Matrix empty = pca_apply_batch(t, Matrix(0, 4));
  CHECK(empty.rows() == 0);
  CHECK(empty.cols() == 3);

  const Matrix batch = pca_apply_batch(t, data);
  REQUIRE(batch.rows() == 9);
  for (std::size_t r = 0; r < 9; ++r) {
    const std::vector<double> single = pca_apply(t, data.row(r));
    for (std::size_t c = 0; c < 3; ++c) {
      CHECK(batch(r, c) == single[c]);
    }
  }

  Matrix two_means(2, 4);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 4; ++c) two_means(r, c) = t.mean[c];
  }
  const Matrix zeros = pca_apply_batch(t, two_means);
  for (double v : zeros.storage()) check_close(v, 0.0, 1e-15);
}

TEST_CASE("fitted basis rows are orthonormal") {
  SplitMix64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 2 + rng.below(20);
    const std::size_t k = 1 + rng.below(6);
    const std::size_t d = 1 + rng.below(k);
    const Matrix data = random_matrix(m, k, rng, 2.0);
    const PcaTransform t = pca_fit(data, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j) {
        double dot = 0.0;
        for (std::size_t c = 0; c < k; ++c) dot += t.basis(i, c) * t.basis(j, c);
        check_close(dot, i == j ? 1.0 : 0.0, 1e-8);
      }
    }
  }
}

TEST_CASE("projected variances equal eigenvalues and respect the trace") {
  SplitMix64 rng(71);
  const Matrix data = random_matrix(40, 6, rng, 2.0);
  const std::size_t d = 4;
  const PcaTransform t = pca_fit(data, d);
  const Matrix projected = pca_apply_batch(t, data);

  double variance_total = 0.0;
  for (std::size_t c = 0; c < d; ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < projected.rows(); ++r) mean += projected(r, c);
    mean /= static_cast<double>(projected.rows());
    double variance = 0.0;
    for (std::size_t r = 0; r < projected.rows(); ++r) {
      const double centered = projected(r, c) - mean;
      variance += centered * centered;
    }
    variance /= static_cast<double>(projected.rows());
    variance_total += variance;

    CHECK(std::abs(variance - t.eigenvalues[c]) <=
          1e-6 * (1.0 + t.eigenvalues[c]));
    if (c > 0) CHECK(t.eigenvalues[c - 1] >= t.eigenvalues[c]);
    CHECK(t.eigenvalues[c] >= 0.0);
  }

  const CovarianceResult cov = covariance_matrix(data);
  double trace = 0.0;
  for (std::size_t i = 0; i < 6; ++i) trace += cov.cov(i, i);
  CHECK(variance_total <= trace + 1e-8);
}

TEST_CASE("pca_fit is bit-for-bit deterministic") {
  SplitMix64 rng(81);
  const Matrix data = random_matrix(15, 5, rng, 2.0);
  const PcaTransform a = pca_fit(data, 3);
  const PcaTransform b = pca_fit(data, 3);
  CHECK(a == b);
}
