#pragma once

#include <cmath>
#include <cstddef>

#include "tmpca/matrix.hpp"
#include "tmpca/rng.hpp"

namespace tmpca::testing {

inline Matrix random_matrix(std::size_t rows, std::size_t cols, SplitMix64& rng,
                            double scale = 1.0) {
  Matrix m(rows, cols);
  for (double& v : m.storage()) v = scale * rng.uniform_symmetric();
  return m;
}

inline Matrix random_symmetric(std::size_t k, SplitMix64& rng,
                               double scale = 1.0) {
  Matrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const double v = scale * rng.uniform_symmetric();
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

inline double max_abs_difference(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.storage().size(); ++i) {
    worst = std::max(worst, std::abs(a.storage()[i] - b.storage()[i]));
  }
  return worst;
}

}  // namespace tmpca::testing
