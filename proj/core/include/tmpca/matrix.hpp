#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "tmpca/errors.hpp"

namespace tmpca {

/// Dense row-major matrix of doubles. Deliberately minimal: the library only
/// needs storage, row views, and element access; all linear algebra lives in
/// the routines that own the numerics.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  /// Builds from nested braces: Matrix{{1, 2}, {3, 4}}. All rows must have
  /// the same length.
  Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) {
        throw ShapeError("Matrix initializer rows have unequal lengths");
      }
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::vector<double>& storage() { return data_; }
  const std::vector<double>& storage() const { return data_; }

  /// Reinterprets the row-major storage under a new shape; the element
  /// count must be preserved. Rvalue-qualified so the storage moves.
  Matrix reshaped(std::size_t rows, std::size_t cols) && {
    if (rows * cols != data_.size()) {
      throw ShapeError("Matrix::reshaped: element count mismatch");
    }
    Matrix out;
    out.rows_ = rows;
    out.cols_ = cols;
    out.data_ = std::move(data_);
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace tmpca
