#include "tmpca/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tmpca/errors.hpp"

namespace tmpca {
namespace {

void require_finite(const Matrix& m, const char* what) {
  for (double v : m.storage()) {
    if (!std::isfinite(v)) {
      throw InvalidInputError(std::string(what) + " contains a non-finite entry");
    }
  }
}

/// Sum of squares of the off-diagonal entries (full matrix, both triangles).
/// Squared Frobenius norm of the off-diagonal part. Sweeps maintain only
/// the upper triangle, so sum that and double it; for the exact-zero
/// convergence test only the upper entries matter because the lower
/// triangle is scratch once sweeping starts.
double off_diagonal_sq_upper(const Matrix& a) {
  const std::size_t n = a.rows();
  double sum = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r + 1; c < n; ++c) sum += a(r, c) * a(r, c);
  }
  return 2.0 * sum;
}

/// One cyclic Jacobi pass over the strict upper triangle. Pivots are visited
/// column by column (q outer, p inner) so that the active column can live in
/// `scratch`, a caller-provided buffer of at least n doubles: every rotation
/// (p, q) must touch column q above the diagonal, and keeping it contiguous
/// for the whole pass turns what would be a strided walk per rotation into a
/// linear one. The only strided access left is the column-p walk above row p.
/// `vectors` accumulates the rotations; its rows end up as the eigenvectors.
void jacobi_sweep(Matrix& a, Matrix& vectors, int sweep_index, double* scratch) {
  const std::size_t n = a.rows();

  double sm = 0.0;
  for (std::size_t p = 0; p + 1 < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) sm += std::abs(a(p, q));
  }
  // During the first few sweeps, skip rotations on entries already small
  // relative to the whole triangle; afterwards rotate everything and zero
  // entries that are negligible next to both diagonal neighbours. The
  // explicit zeroing guarantees the off-diagonal norm reaches exactly 0.
  const double tresh =
      sweep_index < 3 ? 0.2 * sm / (static_cast<double>(n) * n) : 0.0;

  for (std::size_t q = 1; q < n; ++q) {
    double* colq = scratch;
    for (std::size_t k = 0; k < q; ++k) colq[k] = a(k, q);

    for (std::size_t p = 0; p < q; ++p) {
      const double apq = colq[p];
      const double g = 100.0 * std::abs(apq);
      if (sweep_index >= 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
          std::abs(a(q, q)) + g == std::abs(a(q, q))) {
        colq[p] = 0.0;
        continue;
      }
      if (std::abs(apq) <= tresh) continue;
      if (apq == 0.0) continue;

      const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
      double t;
      if (std::abs(theta) > 1e150) {
        t = 1.0 / (2.0 * theta);  // avoid overflow in theta * theta
      } else {
        t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
      }
      const double c = 1.0 / std::sqrt(t * t + 1.0);
      const double s = t * c;

      const double app = a(p, p);
      const double aqq = a(q, q);
      a(p, p) = app - t * apq;
      a(q, q) = aqq + t * apq;
      colq[p] = 0.0;

      // Only the upper triangle is maintained: each affected pair lives at
      // (k,p)/(k,q) above the pivot rows, at (p,k)/(k,q) between them, and
      // at (p,k)/(q,k) beyond column q. Column q is the scratch buffer.
      double* row_p = a.row(p).data();
      double* row_q = a.row(q).data();
      for (std::size_t k = 0; k < p; ++k) {
        double* row_k = a.row(k).data();
        const double x = row_k[p];
        const double y = colq[k];
        row_k[p] = c * x - s * y;
        colq[k] = s * x + c * y;
      }
      for (std::size_t k = p + 1; k < q; ++k) {
        const double x = row_p[k];
        const double y = colq[k];
        row_p[k] = c * x - s * y;
        colq[k] = s * x + c * y;
      }
      for (std::size_t k = q + 1; k < n; ++k) {
        const double x = row_p[k];
        const double y = row_q[k];
        row_p[k] = c * x - s * y;
        row_q[k] = s * x + c * y;
      }

      double* vec_p = vectors.row(p).data();
      double* vec_q = vectors.row(q).data();
      for (std::size_t k = 0; k < n; ++k) {
        const double x = vec_p[k];
        const double y = vec_q[k];
        vec_p[k] = c * x - s * y;
        vec_q[k] = s * x + c * y;
      }
    }

    for (std::size_t k = 0; k < q; ++k) a(k, q) = colq[k];
  }
}

}  // namespace

CovarianceResult covariance_matrix(const Matrix& samples) {
  if (samples.rows() == 0 || samples.cols() == 0) {
    throw InvalidInputError("covariance_matrix: empty sample matrix");
  }
  require_finite(samples, "covariance_matrix: samples");

  const std::size_t m = samples.rows();
  const std::size_t k = samples.cols();

  CovarianceResult result;
  result.mean.assign(k, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    auto row = samples.row(r);
    for (std::size_t c = 0; c < k; ++c) result.mean[c] += row[c];
  }
  for (double& v : result.mean) v /= static_cast<double>(m);

  Matrix& cov = result.cov;
  cov = Matrix(k, k);
  std::vector<double> centered(k);
  for (std::size_t r = 0; r < m; ++r) {
    auto row = samples.row(r);
    for (std::size_t c = 0; c < k; ++c) centered[c] = row[c] - result.mean[c];
    for (std::size_t i = 0; i < k; ++i) {
      const double ci = centered[i];
      auto out = cov.row(i);
      for (std::size_t j = i; j < k; ++j) out[j] += ci * centered[j];
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const double v = cov(i, j) / static_cast<double>(m);
      cov(i, j) = v;
      cov(j, i) = v;  // exact mirror: symmetry holds bit-for-bit
    }
  }
  return result;
}

EigenDecomposition symmetric_eigendecomposition(const Matrix& symmetric) {
  if (symmetric.rows() == 0 || symmetric.rows() != symmetric.cols()) {
    throw ShapeError("symmetric_eigendecomposition: matrix must be square and non-empty");
  }
  require_finite(symmetric, "symmetric_eigendecomposition: matrix");

  const std::size_t n = symmetric.rows();
  double max_abs = 0.0;
  for (double v : symmetric.storage()) max_abs = std::max(max_abs, std::abs(v));
  const double sym_tol = 1e-10 * (1.0 + max_abs);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r + 1; c < n; ++c) {
      if (std::abs(symmetric(r, c) - symmetric(c, r)) > sym_tol) {
        throw InvalidInputError(
            "symmetric_eigendecomposition: matrix is not symmetric at (" +
            std::to_string(r) + ", " + std::to_string(c) + ")");
      }
    }
  }

  // The sweeps read and update only the diagonal and the strict upper
  // triangle; the lower triangle is dead storage from here on, so an input
  // that is symmetric merely to tolerance is handled consistently by
  // construction.
  Matrix a = symmetric;

  Matrix vectors = Matrix::identity(n);
  std::vector<double> scratch(n, 0.0);
  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) trace += a(i, i);
  const double target = 1e-12 * std::max(trace, 0.0);

  bool converged = false;
  for (int sweep = 0; sweep < 100; ++sweep) {
    const double off = std::sqrt(off_diagonal_sq_upper(a));
    if (off == 0.0 || off < target) {
      converged = true;
      break;
    }
    jacobi_sweep(a, vectors, sweep, scratch.data());
  }
  if (!converged) {
    const double off = std::sqrt(off_diagonal_sq_upper(a));
    if (off == 0.0 || off < target) {
      converged = true;
    }
  }
  if (!converged) {
    throw NumericalError(
        "symmetric_eigendecomposition: Jacobi iteration did not converge "
        "within 100 sweeps (residual off-diagonal norm " +
        std::to_string(std::sqrt(off_diagonal_sq_upper(a))) + ")");
  }

  // Sort by descending eigenvalue; ties keep original diagonal order.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&a](std::size_t i, std::size_t j) {
    return a(i, i) > a(j, j);
  });

  EigenDecomposition result;
  result.eigenvalues.resize(n);
  result.eigenvectors = Matrix(n, n);
  for (std::size_t out = 0; out < n; ++out) {
    const std::size_t src = order[out];
    result.eigenvalues[out] = a(src, src);
    auto dst = result.eigenvectors.row(out);
    auto v = vectors.row(src);

    // Sign convention: the largest-magnitude entry is positive; among tied
    // magnitudes, the lowest index decides.
    std::size_t pick = 0;
    double best = std::abs(v[0]);
    for (std::size_t k = 1; k < n; ++k) {
      if (std::abs(v[k]) > best) {
        best = std::abs(v[k]);
        pick = k;
      }
    }
    const double flip = v[pick] < 0.0 ? -1.0 : 1.0;
    for (std::size_t k = 0; k < n; ++k) dst[k] = flip * v[k];
  }
  return result;
}

PcaTransform pca_fit(const Matrix& samples, std::size_t out_dim) {
  if (samples.rows() == 0 || samples.cols() == 0) {
    throw InvalidInputError("pca_fit: empty sample matrix");
  }
  if (out_dim == 0 || out_dim > samples.cols()) {
    throw InvalidArgumentError(
        "pca_fit: out_dim must be in [1, " + std::to_string(samples.cols()) +
        "], got " + std::to_string(out_dim));
  }

  const std::size_t k = samples.cols();

  CovarianceResult summary = covariance_matrix(samples);
  EigenDecomposition eig = symmetric_eigendecomposition(summary.cov);

  PcaTransform t;
  t.in_dim = k;
  t.out_dim = out_dim;
  t.mean = std::move(summary.mean);

  t.eigenvalues.assign(eig.eigenvalues.begin(),
                       eig.eigenvalues.begin() + static_cast<std::ptrdiff_t>(out_dim));
  // A covariance matrix is positive semidefinite; tiny negative eigenvalues
  // are pure roundoff.
  for (double& v : t.eigenvalues) v = std::max(v, 0.0);

  t.basis = Matrix(out_dim, k);
  for (std::size_t r = 0; r < out_dim; ++r) {
    auto dst = t.basis.row(r);
    auto src = eig.eigenvectors.row(r);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  return t;
}

std::vector<double> pca_apply(const PcaTransform& t, std::span<const double> x) {
  if (x.size() != t.in_dim) {
    throw ShapeError("pca_apply: expected vector of length " +
                     std::to_string(t.in_dim) + ", got " +
                     std::to_string(x.size()));
  }
  std::vector<double> centered(t.in_dim);
  for (std::size_t c = 0; c < t.in_dim; ++c) centered[c] = x[c] - t.mean[c];

  std::vector<double> out(t.out_dim, 0.0);
  for (std::size_t r = 0; r < t.out_dim; ++r) {
    auto basis_row = t.basis.row(r);
    double acc = 0.0;
    for (std::size_t c = 0; c < t.in_dim; ++c) acc += basis_row[c] * centered[c];
    out[r] = acc;
  }
  return out;
}

Matrix pca_apply_batch(const PcaTransform& t, const Matrix& samples) {
  if (samples.cols() != t.in_dim) {
    throw ShapeError("pca_apply_batch: expected width " +
                     std::to_string(t.in_dim) + ", got " +
                     std::to_string(samples.cols()));
  }
  Matrix out(samples.rows(), t.out_dim);
  std::vector<double> centered(t.in_dim);
  for (std::size_t r = 0; r < samples.rows(); ++r) {
    auto row = samples.row(r);
    for (std::size_t c = 0; c < t.in_dim; ++c) centered[c] = row[c] - t.mean[c];
    auto dst = out.row(r);
    for (std::size_t o = 0; o < t.out_dim; ++o) {
      auto basis_row = t.basis.row(o);
      double acc = 0.0;
      for (std::size_t c = 0; c < t.in_dim; ++c) acc += basis_row[c] * centered[c];
      dst[o] = acc;
    }
  }
  return out;
}

}  // namespace tmpca
