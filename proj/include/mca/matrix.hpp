#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace mca {

using Vector = std::vector<double>;

/// Dense real matrix, column-major. Data points live in columns throughout the
/// library (X is p attributes by n points), so column spans are contiguous.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[j * rows_ + i];
  }
  double operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[j * rows_ + i];
  }

  std::span<double> col(std::size_t j) {
    assert(j < cols_);
    return {data_.data() + j * rows_, rows_};
  }
  std::span<const double> col(std::size_t j) const {
    assert(j < cols_);
    return {data_.data() + j * rows_, rows_};
  }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }

  bool all_finite() const noexcept;
  double frobenius_norm() const noexcept;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vector data_;
};

Matrix transpose(const Matrix& a);

/// a * x
Vector matvec(const Matrix& a, std::span<const double> x);
/// a' * x
Vector matvec_t(const Matrix& a, std::span<const double> x);

bool all_finite(std::span<const double> x) noexcept;

}  // namespace mca
