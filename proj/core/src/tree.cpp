#include "tmpca/tree.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "tmpca/errors.hpp"

namespace tmpca {
namespace {

/// log_p(n) when n is an exact power of p, throwing otherwise.
std::size_t level_count(std::size_t n, std::size_t p, const char* who) {
  if (n == 1) return 0;
  std::size_t levels = 0;
  std::size_t rest = n;
  while (rest > 1) {
    if (p < 2 || rest % p != 0) {
      throw ShapeError(std::string(who) + ": sentence length " +
                       std::to_string(n) + " is not a power of the branching factor " +
                       std::to_string(p));
    }
    rest /= p;
    ++levels;
  }
  return levels;
}

struct CorpusShape {
  std::size_t m = 0;
  std::size_t len = 0;
  std::size_t d = 0;
};

CorpusShape uniform_shape(const std::vector<Matrix>& sentences, const char* who) {
  if (sentences.empty()) {
    throw InvalidInputError(std::string(who) + ": empty sentence list");
  }
  CorpusShape shape{sentences.size(), sentences[0].rows(), sentences[0].cols()};
  if (shape.len == 0 || shape.d == 0) {
    throw ShapeError(std::string(who) + ": sentences must be non-empty matrices");
  }
  for (std::size_t i = 1; i < shape.m; ++i) {
    if (sentences[i].rows() != shape.len || sentences[i].cols() != shape.d) {
      throw ShapeError(std::string(who) + ": sentence " + std::to_string(i) +
                       " has shape " + std::to_string(sentences[i].rows()) + "x" +
                       std::to_string(sentences[i].cols()) + ", expected " +
                       std::to_string(shape.len) + "x" + std::to_string(shape.d));
    }
  }
  return shape;
}

/// Stacks all sentences into one (M*len) x D matrix, sentence-major.
Matrix flatten_corpus(const std::vector<Matrix>& sentences, const CorpusShape& shape) {
  Matrix flat(shape.m * shape.len, shape.d);
  double* dst = flat.storage().data();
  for (const Matrix& s : sentences) {
    dst = std::copy(s.storage().begin(), s.storage().end(), dst);
  }
  return flat;
}

}  // namespace

Matrix build_level_matrix(const std::vector<Matrix>& sentences, std::size_t p) {
  const CorpusShape shape = uniform_shape(sentences, "build_level_matrix");
  if (p < 1 || shape.len % p != 0) {
    throw ShapeError("build_level_matrix: sentence length " +
                     std::to_string(shape.len) + " is not divisible by p = " +
                     std::to_string(p));
  }
  // Row-major stacking means grouping p consecutive vectors is a pure
  // reshape of the flattened corpus.
  return flatten_corpus(sentences, shape)
      .reshaped(shape.m * (shape.len / p), p * shape.d);
}

TmpcaModel tmpca_fit(const std::vector<Matrix>& sentences, std::size_t p) {
  const CorpusShape shape = uniform_shape(sentences, "tmpca_fit");
  if (p < 2) {
    throw InvalidArgumentError("tmpca_fit: branching factor must be at least 2, got " +
                               std::to_string(p));
  }
  const std::size_t levels = level_count(shape.len, p, "tmpca_fit");

  TmpcaModel model;
  model.n = shape.len;
  model.d = shape.d;
  model.p = p;
  model.levels.reserve(levels);
  if (levels == 0) return model;

  Matrix current = flatten_corpus(sentences, shape);
  std::size_t len = shape.len;
  while (len > 1) {
    Matrix level =
        std::move(current).reshaped(shape.m * (len / p), p * shape.d);
    PcaTransform t = pca_fit(level, shape.d);
    current = pca_apply_batch(t, level);
    model.levels.push_back(std::move(t));
    len /= p;
  }
  return model;
}

std::vector<double> tmpca_apply(const TmpcaModel& model, const Matrix& sentence) {
  if (sentence.rows() != model.n || sentence.cols() != model.d) {
    throw InvalidArgumentError(
        "tmpca_apply: sentence has shape " + std::to_string(sentence.rows()) +
        "x" + std::to_string(sentence.cols()) + ", model expects " +
        std::to_string(model.n) + "x" + std::to_string(model.d));
  }
  Matrix current = sentence;
  for (const PcaTransform& t : model.levels) {
    const std::size_t groups = current.rows() / model.p;
    Matrix level = std::move(current).reshaped(groups, model.p * model.d);
    current = pca_apply_batch(t, level);
  }
  auto row = current.row(0);
  return {row.begin(), row.end()};
}

Matrix tmpca_apply_batch(const TmpcaModel& model,
                         const std::vector<Matrix>& sentences) {
  if (sentences.empty()) return Matrix(0, model.d);
  const CorpusShape shape = uniform_shape(sentences, "tmpca_apply_batch");
  if (shape.len != model.n || shape.d != model.d) {
    throw InvalidArgumentError(
        "tmpca_apply_batch: sentences have shape " + std::to_string(shape.len) +
        "x" + std::to_string(shape.d) + ", model expects " +
        std::to_string(model.n) + "x" + std::to_string(model.d));
  }
  Matrix current = flatten_corpus(sentences, shape);
  std::size_t len = shape.len;
  for (const PcaTransform& t : model.levels) {
    Matrix level =
        std::move(current).reshaped(shape.m * (len / model.p), model.p * model.d);
    current = pca_apply_batch(t, level);
    len /= model.p;
  }
  return current;  // shape.m x d
}

double tmpca_cost(std::size_t n, std::size_t d, std::size_t m, std::size_t p) {
  if (n == 0 || d == 0 || m == 0 || p == 0) {
    throw InvalidArgumentError("tmpca_cost: all arguments must be positive");
  }
  const std::size_t levels = level_count(n, p, "tmpca_cost");
  const double pd = static_cast<double>(p) * static_cast<double>(d);
  const double eigen_cost = pd * pd * pd;

  double total = 0.0;
  std::size_t len = n;
  for (std::size_t s = 0; s < levels; ++s) {
    len /= p;  // rows per sentence at level s+1: n / p^(s+1)
    total += eigen_cost + static_cast<double>(m) * static_cast<double>(len) * pd * pd;
  }
  return total;
}

double pca_cost(std::size_t n, std::size_t d, std::size_t m) {
  if (n == 0 || d == 0 || m == 0) {
    throw InvalidArgumentError("pca_cost: all arguments must be positive");
  }
  const double nd = static_cast<double>(n) * static_cast<double>(d);
  return nd * nd * nd + static_cast<double>(m) * nd * nd;
}

}  // namespace tmpca
