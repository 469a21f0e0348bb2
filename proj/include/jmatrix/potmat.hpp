#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "jmatrix/matrix.hpp"
#include "jmatrix/params.hpp"

namespace jmatrix {

/// Symmetric tridiagonal matrix: diag[0..n), off[i] couples i and i+1.
struct TridiagonalMatrix {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t order() const noexcept { return diag.size(); }
  double operator()(std::size_t i, std::size_t j) const;
  /// Drops the first row and column.
  TridiagonalMatrix without_first() const;
};

/// Jacobi matrix of the polynomials orthonormal under the normalized weight
/// x^beta e^{-x} / Gamma(beta + 1). Both basis families share it; the oscillator
/// basis uses it in the variable y = x^2.
TridiagonalMatrix jacobi_matrix(const BasisSpec& basis, std::size_t order);
TridiagonalMatrix jacobi_matrix(double beta, std::size_t order);

/// Gauss rule of the normalized generalized-Laguerre weight.
///
/// `vectors(n, k)` is component n of the k-th normalized eigenvector of the
/// Jacobi matrix, signed so that row 0 is positive. It may hold fewer rows than
/// the order of the rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  /// ln(weights), meaningful even where the weight underflows.
  std::vector<double> log_weights;
  Matrix vectors;
  double beta = 0.0;

  std::size_t order() const noexcept { return nodes.size(); }
  /// Normalized weight function at x.
  double density(double x) const;
  /// weights / density at each node.
  std::vector<double> derivative_weights() const;
};

/// Nodes from the eigenvalues of `j`, weights from the squared first eigenvector
/// components, full eigenvector matrix retained.
QuadratureRule nodes_and_weights(const TridiagonalMatrix& j, double beta);

/// Weights from the spectra of `j` and of `j` with its first row and column
/// removed, without eigenvectors. Returns ln(weight).
std::vector<double> log_weights_from_eigenvalues(std::span<const double> nodes,
                                                 std::span<const double> sub_nodes);
std::vector<double> weights_from_eigenvalues(const TridiagonalMatrix& j);

/// Rule of `order` nodes with only the first `vector_rows` eigenvector rows,
/// built as sqrt(w_k) p_n(e_k) with scaled forward recursion. Scales to orders
/// where the full eigenvector matrix would be too costly or underflow.
QuadratureRule gauss_rule(double beta, std::size_t order, std::size_t vector_rows);

enum class QuadratureMode { with_weight, derivative_weight };

double quadrature_integrate(const QuadratureRule& rule, const std::function<double(double)>& f,
                            QuadratureMode mode = QuadratureMode::with_weight);

/// (L F L^T) over the first `size` eigenvector rows, F = diag(f(node)).
SymMatrix quadrature_matrix(const QuadratureRule& rule, const std::function<double(double)>& f,
                            std::size_t size);

enum class PotentialKind { zero, exponential, gaussian, poschl_teller_cosh, tabulated };

std::string to_string(PotentialKind k);
/// Accepts "zero", "exponential", "gaussian", "poschl-teller-cosh" (also "pöschl-teller-cosh"),
/// "tabulated". Throws DomainError otherwise.
PotentialKind potential_kind_from_string(const std::string& s);

/// Short-range potential U(r), finite for r >= 0.
///   exponential        v0 exp(-r / range)
///   gaussian           v0 exp(-(r / range)^2)
///   poschl_teller_cosh v0 / cosh^2(r / range)
///   tabulated          linear interpolation of (r_i, U_i), zero past the last point
class PotentialModel {
 public:
  PotentialModel() = default;
  static PotentialModel zero() { return {}; }
  static PotentialModel parametric(PotentialKind kind, double v0, double range);
  static PotentialModel tabulated(std::vector<double> r, std::vector<double> u);
  /// Two whitespace-separated columns (r, U); '#' starts a comment.
  static PotentialModel read_table(std::istream& in);

  PotentialKind kind() const noexcept { return kind_; }
  double strength() const noexcept { return v0_; }
  double range() const noexcept { return range_; }
  bool is_zero() const noexcept;

  double operator()(double r) const;

 private:
  PotentialKind kind_ = PotentialKind::zero;
  double v0_ = 0.0;
  double range_ = 1.0;
  std::vector<double> r_;
  std::vector<double> u_;
};

/// Integrand handed to the Gauss rule for <phi_n|U|phi_m>, as a function of the
/// quadrature variable: x^2 U(x / lambda) for the Laguerre basis and
/// y U(sqrt(y) / lambda) for the oscillator basis. The extra power is the part of
/// phi_n phi_m not covered by the x^beta e^{-x} weight.
std::function<double(double)> quadrature_integrand(const BasisSpec& basis, const PotentialModel& model,
                                                   double lambda_scale);

/// <phi_n|U|phi_m> for n, m < size with a rule of `quad_order` nodes
/// (0 means quad_order = size). Symmetric by construction.
SymMatrix potential_matrix(const BasisSpec& basis, const PotentialModel& model, double lambda_scale,
                           std::size_t size, std::size_t quad_order = 0);

}  // namespace jmatrix
