#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "test_util.hpp"
#include "tmpca/errors.hpp"
#include "tmpca/pca.hpp"
#include "tmpca/tree.hpp"

using namespace tmpca;
using tmpca::testing::random_matrix;

namespace {

std::vector<Matrix> random_corpus(std::size_t m, std::size_t n, std::size_t d,
                                  SplitMix64& rng) {
  std::vector<Matrix> corpus;
  corpus.reserve(m);
  for (std::size_t i = 0; i < m; ++i) corpus.push_back(random_matrix(n, d, rng));
  return corpus;
}

}  // namespace

TEST_CASE("build_level_matrix concatenates consecutive pairs") {
  const std::vector<Matrix> sentences{Matrix{{1, 2}, {3, 4}},
                                      Matrix{{5, 6}, {7, 8}}};
  const Matrix level = build_level_matrix(sentences, 2);
  CHECK(level == Matrix{{1, 2, 3, 4}, {5, 6, 7, 8}});
}

TEST_CASE("build_level_matrix splits one sentence into groups") {
  const std::vector<Matrix> sentences{Matrix{{1}, {2}, {3}, {4}}};
  CHECK(build_level_matrix(sentences, 2) == Matrix{{1, 2}, {3, 4}});
  CHECK(build_level_matrix(sentences, 4) == Matrix{{1, 2, 3, 4}});
  CHECK(build_level_matrix(sentences, 1) == Matrix{{1}, {2}, {3}, {4}});
}

TEST_CASE("build_level_matrix validates its input") {
  CHECK_THROWS_AS(build_level_matrix({}, 2), InvalidInputError);
  CHECK_THROWS_AS(
      build_level_matrix({Matrix{{1, 2}}, Matrix{{1, 2}, {3, 4}}}, 2),
      ShapeError);
  CHECK_THROWS_AS(build_level_matrix({Matrix{{1}, {2}, {3}}}, 2), ShapeError);
  CHECK_THROWS_AS(build_level_matrix({Matrix{{1}, {2}}}, 0), ShapeError);
}

TEST_CASE("length-one sentences fit a zero-level identity model") {
  const std::vector<Matrix> sentences{Matrix{{1, 2, 3}}, Matrix{{4, 5, 6}}};
  const TmpcaModel model = tmpca_fit(sentences, 2);
  CHECK(model.n == 1);
  CHECK(model.d == 3);
  CHECK(model.levels.empty());
  CHECK(tmpca_apply(model, sentences[0]) == std::vector<double>{1, 2, 3});
  const Matrix batch = tmpca_apply_batch(model, sentences);
  CHECK(batch == Matrix{{1, 2, 3}, {4, 5, 6}});
}

TEST_CASE("single-level model equals plain pca on the level matrix") {
  SplitMix64 rng(101);
  const std::vector<Matrix> sentences = random_corpus(6, 2, 1, rng);
  const TmpcaModel model = tmpca_fit(sentences, 2);
  REQUIRE(model.levels.size() == 1);

  const Matrix level = build_level_matrix(sentences, 2);
  const PcaTransform direct = pca_fit(level, 1);
  CHECK(model.levels[0] == direct);

  for (const Matrix& s : sentences) {
    const std::vector<double> via_tree = tmpca_apply(model, s);
    const std::vector<double> via_pca =
        pca_apply(direct, std::vector<double>{s(0, 0), s(1, 0)});
    CHECK(via_tree == via_pca);
  }
}

TEST_CASE("branching equal to sentence length collapses to one pca") {
  SplitMix64 rng(111);
  const std::size_t n = 8, d = 3, m = 12;
  const std::vector<Matrix> sentences = random_corpus(m, n, d, rng);

  const TmpcaModel model = tmpca_fit(sentences, n);
  REQUIRE(model.levels.size() == 1);
  CHECK(model.levels[0].in_dim == n * d);
  CHECK(model.levels[0].out_dim == d);

  const PcaTransform direct = pca_fit(build_level_matrix(sentences, n), d);
  CHECK(model.levels[0] == direct);

  const Matrix reduced = tmpca_apply_batch(model, sentences);
  const Matrix direct_out =
      pca_apply_batch(direct, build_level_matrix(sentences, n));
  CHECK(reduced == direct_out);
}

TEST_CASE("fitted cascades have the expected level shapes") {
  SplitMix64 rng(121);
  const std::vector<Matrix> sentences = random_corpus(5, 16, 2, rng);
  const TmpcaModel model = tmpca_fit(sentences, 2);
  CHECK(model.n == 16);
  CHECK(model.d == 2);
  CHECK(model.p == 2);
  REQUIRE(model.levels.size() == 4);
  for (const PcaTransform& level : model.levels) {
    CHECK(level.in_dim == 4);
    CHECK(level.out_dim == 2);
  }

  const TmpcaModel quad = tmpca_fit(random_corpus(5, 16, 2, rng), 4);
  CHECK(quad.levels.size() == 2);
}

TEST_CASE("apply honors the shape contract") {
  SplitMix64 rng(131);
  for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{4},
                        std::size_t{8}}) {
    for (std::size_t d : {std::size_t{1}, std::size_t{3}}) {
      const std::vector<Matrix> sentences = random_corpus(4, n, d, rng);
      const TmpcaModel model = tmpca_fit(sentences, 2);
      const std::vector<double> out = tmpca_apply(model, sentences[0]);
      CHECK(out.size() == d);
      const Matrix batch = tmpca_apply_batch(model, sentences);
      CHECK(batch.rows() == 4);
      CHECK(batch.cols() == d);
    }
  }
}

TEST_CASE("batch apply matches one-at-a-time apply") {
  SplitMix64 rng(141);
  const std::vector<Matrix> sentences = random_corpus(7, 8, 3, rng);
  const TmpcaModel model = tmpca_fit(sentences, 2);
  const Matrix batch = tmpca_apply_batch(model, sentences);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const std::vector<double> single = tmpca_apply(model, sentences[i]);
    for (std::size_t c = 0; c < 3; ++c) CHECK(batch(i, c) == single[c]);
  }
  CHECK(tmpca_apply_batch(model, {}) == Matrix(0, 3));
}

TEST_CASE("fit validates its input") {
  SplitMix64 rng(151);
  const std::vector<Matrix> sentences = random_corpus(3, 4, 2, rng);
  CHECK_THROWS_AS(tmpca_fit(sentences, 1), InvalidArgumentError);
  CHECK_THROWS_AS(tmpca_fit(sentences, 0), InvalidArgumentError);
  CHECK_THROWS_AS(tmpca_fit(random_corpus(3, 6, 2, rng), 2), ShapeError);
  CHECK_THROWS_AS(tmpca_fit({}, 2), InvalidInputError);
  CHECK_THROWS_AS(tmpca_fit({Matrix{{1, 2}}, Matrix{{1}}}, 2), ShapeError);
}

TEST_CASE("apply validates sentence shape") {
  SplitMix64 rng(161);
  const std::vector<Matrix> sentences = random_corpus(4, 4, 2, rng);
  const TmpcaModel model = tmpca_fit(sentences, 2);
  CHECK_THROWS_AS(tmpca_apply(model, Matrix(4, 3)), InvalidArgumentError);
  CHECK_THROWS_AS(tmpca_apply(model, Matrix(2, 2)), InvalidArgumentError);
  CHECK_THROWS_AS(tmpca_apply_batch(model, {Matrix(8, 2)}),
                  InvalidArgumentError);
}

TEST_CASE("fit is bit-for-bit deterministic") {
  SplitMix64 rng(171);
  const std::vector<Matrix> sentences = random_corpus(6, 8, 2, rng);
  CHECK(tmpca_fit(sentences, 2) == tmpca_fit(sentences, 2));
}

TEST_CASE("cost formulas reproduce hand-computed values") {
  CHECK(tmpca_cost(4, 2, 8, 2) == 512.0);
  CHECK(pca_cost(4, 2, 8) == 1024.0);
}

TEST_CASE("tree cost collapses to the pca cost at full branching") {
  for (std::size_t n : {std::size_t{2}, std::size_t{4}, std::size_t{16},
                        std::size_t{64}}) {
    for (std::size_t d : {std::size_t{1}, std::size_t{8}}) {
      CHECK(tmpca_cost(n, d, 100, n) == pca_cost(n, d, 100));
    }
  }
}

TEST_CASE("tree cost grows with the branching factor") {
  const std::size_t n = 16, d = 2, m = 8;
  const double c2 = tmpca_cost(n, d, m, 2);
  const double c4 = tmpca_cost(n, d, m, 4);
  const double c16 = tmpca_cost(n, d, m, 16);
  CHECK(c2 < c4);
  CHECK(c4 < c16);
  CHECK(c16 == pca_cost(n, d, m));
}

TEST_CASE("cost formulas validate their arguments") {
  CHECK_THROWS_AS(tmpca_cost(0, 2, 8, 2), InvalidArgumentError);
  CHECK_THROWS_AS(tmpca_cost(4, 0, 8, 2), InvalidArgumentError);
  CHECK_THROWS_AS(tmpca_cost(4, 2, 0, 2), InvalidArgumentError);
  CHECK_THROWS_AS(tmpca_cost(4, 2, 8, 0), InvalidArgumentError);
  CHECK_THROWS_AS(tmpca_cost(6, 2, 8, 4), ShapeError);
  CHECK_THROWS_AS(pca_cost(0, 2, 8), InvalidArgumentError);
  CHECK(tmpca_cost(1, 2, 8, 2) == 0.0);
}

TEST_CASE("reduction keeps most of the training variance per level") {
  // Build sentences whose pair-groups live close to a low-dimensional
  // subspace; the first-level eigenvalue spectrum should then put almost all
  // energy in the kept directions.
  SplitMix64 rng(181);
  const std::size_t d = 2;
  std::vector<Matrix> sentences;
  for (std::size_t i = 0; i < 40; ++i) {
    Matrix s(4, d);
    for (std::size_t r = 0; r < 4; r += 2) {
      const double a = rng.normal();
      // Pair (r, r+1) is a fixed pattern scaled by one random factor, plus
      // tiny noise: a rank-one family of 2*d-vectors.
      s(r, 0) = a;
      s(r, 1) = 2 * a + 1e-3 * rng.normal();
      s(r + 1, 0) = -a + 1e-3 * rng.normal();
      s(r + 1, 1) = 0.5 * a;
    }
    sentences.push_back(std::move(s));
  }
  const TmpcaModel model = tmpca_fit(sentences, 2);
  const std::vector<double>& ev = model.levels[0].eigenvalues;
  REQUIRE(ev.size() == d);
  CHECK(ev[0] > 1e3 * ev[1]);
}
