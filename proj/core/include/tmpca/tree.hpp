#pragma once

#include <cstddef>
#include <vector>

#include "tmpca/matrix.hpp"
#include "tmpca/pca.hpp"

namespace tmpca {

/// The tree-structured transform: one shared PCA per level. Level s takes
/// the previous level's length-l sequence of D-vectors, concatenates
/// non-overlapping P-tuples into (P*D)-vectors, and projects each back to D
/// dimensions; after log_P(N) levels a whole sentence is a single D-vector.
struct TmpcaModel {
  std::size_t n = 0;  // sentence length; a power of p
  std::size_t d = 0;  // embedding width
  std::size_t p = 0;  // branching factor
  std::vector<PcaTransform> levels;  // log_p(n) transforms, level 1 first

  friend bool operator==(const TmpcaModel&, const TmpcaModel&) = default;
};

/// Stacks non-overlapping p-tuples from every sentence into one training
/// matrix. Each sentence is an l x D matrix (l divisible by p; uniform
/// shape across sentences); the result is (M*l/p) x (p*D), sentence-major:
/// row i*(l/p) + j concatenates sentence i's vectors [j*p, j*p + p).
Matrix build_level_matrix(const std::vector<Matrix>& sentences, std::size_t p);

/// Fits the cascade on M sentences of shape N x D. N must be a power of p
/// (p >= 2); callers pad sentences beforehand. N = 1 yields a zero-level
/// model whose apply is the identity.
TmpcaModel tmpca_fit(const std::vector<Matrix>& sentences, std::size_t p);

/// Reduces one N x D sentence to a length-D vector.
std::vector<double> tmpca_apply(const TmpcaModel& model, const Matrix& sentence);

/// Row-wise tmpca_apply over M sentences; returns M x D, order preserved.
Matrix tmpca_apply_batch(const TmpcaModel& model,
                         const std::vector<Matrix>& sentences);

/// Estimated operation count of fitting the cascade on M sentences of shape
/// n x d with branching p: the exact per-level sum of the eigensolve cost
/// (p*d)^3 plus the projection cost m*(n/p^s)*(p*d)^2. n must be a power of
/// p; n = 1 costs 0.
double tmpca_cost(std::size_t n, std::size_t d, std::size_t m, std::size_t p);

/// Estimated operation count of one full-sentence PCA: n^3*d^3 + m*n^2*d^2.
double pca_cost(std::size_t n, std::size_t d, std::size_t m);

}  // namespace tmpca
