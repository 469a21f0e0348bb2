#include "jmatrix/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "jmatrix/errors.hpp"

namespace jmatrix {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::leading(std::size_t n) const {
  if (n > rows_ || n > cols_) throw DomainError("Matrix::leading: block larger than matrix");
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = (*this)(i, j);
  return b;
}

Matrix Matrix::without(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw DomainError("Matrix::without: index out of range");
  Matrix b(rows_ - 1, cols_ - 1);
  for (std::size_t i = 0, bi = 0; i < rows_; ++i) {
    if (i == r) continue;
    for (std::size_t j = 0, bj = 0; j < cols_; ++j) {
      if (j == c) continue;
      b(bi, bj++) = (*this)(i, j);
    }
    ++bi;
  }
  return b;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DomainError("Matrix product: shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

namespace {
template <class Op>
Matrix elementwise(const Matrix& a, const Matrix& b, Op op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DomainError("Matrix elementwise op: shape mismatch");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = op(a(i, j), b(i, j));
  return c;
}
}  // namespace

Matrix operator-(const Matrix& a, const Matrix& b) {
  return elementwise(a, b, [](double x, double y) { return x - y; });
}
Matrix operator+(const Matrix& a, const Matrix& b) {
  return elementwise(a, b, [](double x, double y) { return x + y; });
}

std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw DomainError("Matrix-vector product: shape mismatch");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ai = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += ai[j] * x[j];
    y[i] = s;
  }
  return y;
}

SymMatrix SymMatrix::identity(std::size_t order) {
  SymMatrix s(order);
  for (std::size_t i = 0; i < order; ++i) s.set(i, i, 1.0);
  return s;
}

SymMatrix SymMatrix::from_matrix(const Matrix& m) {
  if (m.rows() != m.cols()) throw DomainError("SymMatrix: matrix is not square");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) throw DomainError("SymMatrix: matrix is not symmetric");
  SymMatrix s;
  s.m_ = m;
  return s;
}

SymMatrix SymMatrix::symmetrized(const Matrix& m) {
  if (m.rows() != m.cols()) throw DomainError("SymMatrix: matrix is not square");
  SymMatrix s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  return s;
}

void SymMatrix::add(std::size_t i, std::size_t j, double v) {
  m_(i, j) += v;
  if (i != j) m_(j, i) = m_(i, j);
}

SymMatrix SymMatrix::leading(std::size_t n) const {
  SymMatrix s;
  s.m_ = m_.leading(n);
  return s;
}

SymMatrix SymMatrix::without(std::size_t k) const {
  SymMatrix s;
  s.m_ = m_.without(k, k);
  return s;
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  return SymMatrix::from_matrix(a.dense() + b.dense());
}

SymMatrix axpy_neg(const SymMatrix& a, double s, const SymMatrix& b) {
  if (a.order() != b.order()) throw DomainError("axpy_neg: order mismatch");
  SymMatrix r(a.order());
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = i; j < a.order(); ++j) r.set(i, j, a(i, j) - s * b(i, j));
  return r;
}

}  // namespace jmatrix
