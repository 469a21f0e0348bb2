#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace jmatrix {

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<const double> data() const noexcept { return data_; }

  Matrix transposed() const;
  /// Copy of the leading `n` x `n` block.
  Matrix leading(std::size_t n) const;
  /// Copy with row `r` and column `c` removed.
  Matrix without(std::size_t r, std::size_t c) const;

  /// Largest absolute entry.
  double max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

/// Real symmetric matrix. Writes go to both triangles so entry(i,j) == entry(j,i)
/// holds bit-for-bit.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t order) : m_(order, order) {}

  static SymMatrix identity(std::size_t order);
  /// Throws DomainError unless `m` is square and exactly symmetric.
  static SymMatrix from_matrix(const Matrix& m);
  /// Averages the two triangles.
  static SymMatrix symmetrized(const Matrix& m);

  std::size_t order() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  void set(std::size_t i, std::size_t j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }
  void add(std::size_t i, std::size_t j, double v);

  const Matrix& dense() const noexcept { return m_; }
  SymMatrix leading(std::size_t n) const;
  /// Principal submatrix with row and column `k` removed.
  SymMatrix without(std::size_t k) const;

 private:
  Matrix m_;
};

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
/// a - s*b
SymMatrix axpy_neg(const SymMatrix& a, double s, const SymMatrix& b);

}  // namespace jmatrix
