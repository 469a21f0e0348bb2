#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>

#include "jmatrix/linalg.hpp"
#include "jmatrix/matrix.hpp"

namespace jmatrix {

/// Finite Green's function G(z) = (H - z Omega)^{-1} of a symmetric pencil.
///
/// The generalized decomposition is computed once at construction. Spectra of
/// the (n, m)-deleted sub-matrices are computed on first use and cached; the
/// cache is shared by copies and safe for concurrent readers.
class FiniteGreen {
 public:
  /// Orthogonal basis: Omega = I.
  explicit FiniteGreen(SymMatrix h);
  FiniteGreen(SymMatrix h, SymMatrix omega);
  /// Keeps only the last `trailing_rows` eigenvector rows, which is all that
  /// spectral sums over those rows need.
  FiniteGreen(SymMatrix h, SymMatrix omega, std::size_t trailing_rows);

  std::size_t order() const noexcept { return h_.order(); }
  bool orthogonal() const noexcept { return orthogonal_; }
  const SymMatrix& h() const noexcept { return h_; }
  const SymMatrix& omega() const noexcept { return omega_; }
  const GeneralizedDecomposition& eigen() const noexcept { return eig_; }
  /// First row index available to the spectral sum.
  std::size_t first_row() const noexcept { return eig_.first_row; }
  /// Largest absolute entry of H; the scale for degeneracy checks.
  double scale() const noexcept { return scale_; }

 private:
  friend double green_element(const FiniteGreen&, std::size_t, std::size_t, double);
  friend double green_element_eigenvalue_only(const FiniteGreen&, std::size_t, std::size_t, double);
  friend double eigenvector_products(const FiniteGreen&, std::size_t, std::size_t, std::size_t);

  struct SubSpectrum;
  struct Cache;
  const SubSpectrum& sub_spectrum(std::size_t n, std::size_t m) const;
  void check_pole(double z) const;

  SymMatrix h_;
  SymMatrix omega_;
  bool orthogonal_ = false;
  GeneralizedDecomposition eig_;
  double scale_ = 0.0;
  std::vector<double> omega_spectrum_;
  std::shared_ptr<Cache> cache_;
};

/// Spectral sum over the cached decomposition. Throws PoleError at an eigenvalue
/// and DomainError if a row is not held.
double green_element(const FiniteGreen& fg, std::size_t n, std::size_t m, double z);

/// Same element from eigenvalues alone: the sub-matrix spectrum over the full
/// spectrum, with the overlap determinant ratio in front.
double green_element_eigenvalue_only(const FiniteGreen& fg, std::size_t n, std::size_t m, double z);

/// Gamma_nk Gamma_mk in the normalization of fg.eigen(), from eigenvalues only.
/// Throws DegenerateEigenvalueError when two eigenvalues nearly coincide.
double eigenvector_products(const FiniteGreen& fg, std::size_t n, std::size_t m, std::size_t k);

}  // namespace jmatrix
