#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "jmatrix/matrix.hpp"

namespace jmatrix {

/// Eigenpairs of a real symmetric matrix. Values ascend; column i of `vectors`
/// belongs to values[i]. Each column has unit norm and its largest-magnitude
/// component positive.
struct EigenDecomposition {
  std::vector<double> values;
  Matrix vectors;
};

EigenDecomposition eig_sym_tridiagonal(std::span<const double> diag, std::span<const double> offdiag);
EigenDecomposition eig_sym_dense(const SymMatrix& a);

/// Eigenvalues only, ascending. Cheaper than the full decomposition.
std::vector<double> eigenvalues_sym(const SymMatrix& a);
std::vector<double> eigenvalues_sym_tridiagonal(std::span<const double> diag,
                                                std::span<const double> offdiag);

/// Solution of H g = e Omega g.
///
/// `vectors` holds rows first_row..n-1 of the eigenvector matrix. With all rows
/// present, columns are scaled to unit Euclidean norm, so tau = diag(G^T Omega G)
/// is generally not 1. A partial decomposition keeps Omega-normalized columns
/// (tau = 1), because the Euclidean norm would need every row.
struct GeneralizedDecomposition {
  std::vector<double> values;
  std::vector<double> eta;
  std::vector<double> tau;
  Matrix vectors;
  std::size_t first_row = 0;

  std::size_t order() const noexcept { return values.size(); }
  /// Component `n` of eigenvector `i`; n must be >= first_row.
  double vector(std::size_t n, std::size_t i) const { return vectors(n - first_row, i); }
};

/// Throws NotPositiveDefiniteError if Omega fails Cholesky factorization.
GeneralizedDecomposition eig_sym_generalized(const SymMatrix& h, const SymMatrix& omega);
/// Same, keeping only the last `trailing_rows` eigenvector rows.
GeneralizedDecomposition eig_sym_generalized(const SymMatrix& h, const SymMatrix& omega,
                                             std::size_t trailing_rows);

/// Lower Cholesky factor; throws NotPositiveDefiniteError.
Matrix cholesky(const SymMatrix& a);

/// Eigenvalues of a general real square matrix (Hessenberg reduction plus
/// shifted QR), in no particular order.
std::vector<std::complex<double>> eigenvalues_general(const Matrix& a);

/// LU factorization with partial pivoting.
class LuDecomposition {
 public:
  /// Throws SingularMatrixError on a zero pivot or a condition estimate past 1/eps.
  explicit LuDecomposition(const Matrix& a);

  std::size_t order() const noexcept { return lu_.rows(); }
  std::vector<double> solve(std::span<const double> rhs) const;
  std::vector<std::complex<double>> solve(std::span<const std::complex<double>> rhs) const;
  std::vector<double> solve_transposed(std::span<const double> rhs) const;
  double determinant() const;
  /// 1-norm condition number estimate (Hager's method).
  double condition_estimate() const { return cond_; }

 private:
  double estimate_condition(double anorm) const;

  Matrix lu_;
  std::vector<std::size_t> perm_;
  int parity_ = 1;
  double cond_ = 0.0;
};

std::vector<double> solve_dense(const Matrix& a, std::span<const double> rhs);
std::vector<std::complex<double>> solve_dense(const Matrix& a, std::span<const std::complex<double>> rhs);

}  // namespace jmatrix
