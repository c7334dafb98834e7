#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tmpca/matrix.hpp"

namespace tmpca {

/// Result of a symmetric eigendecomposition. Eigenvalues are sorted in
/// descending order; eigenvectors[i] (a row of the matrix) is the unit
/// eigenvector paired with eigenvalues[i].
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;  // row i = eigenvector for eigenvalues[i]
};

/// A fitted principal-component transform: out = basis * (x - mean).
/// basis is out_dim x in_dim; basis rows are orthonormal and ordered by
/// decreasing explained variance (the entries of `eigenvalues`).
struct PcaTransform {
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  std::vector<double> mean;         // length in_dim
  std::vector<double> eigenvalues;  // length out_dim, descending
  Matrix basis;                     // out_dim x in_dim

  friend bool operator==(const PcaTransform&, const PcaTransform&) = default;
};

/// Column means plus population covariance (1/M normalization) of the rows
/// of `samples` (M x K). Each covariance entry is computed once per
/// unordered index pair and mirrored, so the result is exactly symmetric.
/// Throws InvalidInputError for an empty input or non-finite entries.
struct CovarianceResult {
  std::vector<double> mean;  // length K
  Matrix cov;                // K x K, symmetric
};
CovarianceResult covariance_matrix(const Matrix& samples);

/// Full eigendecomposition of a symmetric matrix via cyclic Jacobi
/// rotations. Sweeps run until the off-diagonal Frobenius norm falls below
/// 1e-12 times the trace (or reaches exactly zero), with a hard cap of 100
/// sweeps (NumericalError beyond that). Symmetry is checked on entry to a
/// tolerance of 1e-10 scaled by the largest entry magnitude.
///
/// Conventions, chosen so results are unique and reproducible:
///  - eigenvalues descend; exact ties keep the order of their original
///    diagonal positions;
///  - each eigenvector row is scaled so its largest-magnitude entry is
///    positive (ties broken toward the lowest column index).
EigenDecomposition symmetric_eigendecomposition(const Matrix& symmetric);

/// Fits a PCA transform on the rows of `samples` (M x K), keeping the
/// `out_dim` leading components. Eigenvalues of the sample covariance that
/// come out as small negatives from roundoff are clamped to zero.
/// Throws InvalidArgumentError if out_dim is 0 or exceeds the input width.
PcaTransform pca_fit(const Matrix& samples, std::size_t out_dim);

/// Projects one vector (length in_dim) through the transform.
std::vector<double> pca_apply(const PcaTransform& t, std::span<const double> x);

/// Projects each row of `samples` (M x in_dim); returns M x out_dim.
Matrix pca_apply_batch(const PcaTransform& t, const Matrix& samples);

}  // namespace tmpca
