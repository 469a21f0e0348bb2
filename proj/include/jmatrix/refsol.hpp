#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jmatrix/matrix.hpp"
#include "jmatrix/params.hpp"
#include "jmatrix/specfun.hpp"

namespace jmatrix {

/// Coefficients of the five-term recursion
///   a_n F_n + b_{n-1} F_{n-1} + b_n F_{n+1} + c_{n-2} F_{n-2} + c_n F_{n+2} = 0.
/// Negative n yields zeros, which is the boundary convention the recursion needs.
struct RecursionCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

RecursionCoefficients recursion_coefficients(const BasisSpec& basis, const PhysicalParams& params, long n);

/// The same coefficients split as fixed + mu^2 * per_mu2. Only nu enters `fixed`.
struct RecursionSplit {
  RecursionCoefficients fixed;
  RecursionCoefficients per_mu2;
};

RecursionSplit recursion_split(const BasisSpec& basis, double nu, long n);

/// Symmetric penta-diagonal matrix scale * [a_n on the diagonal, b_n on the first
/// off-diagonals, c_n on the second].
class PentaDiagonalOperator {
 public:
  PentaDiagonalOperator(std::vector<double> diag_a, std::vector<double> off1_b, std::vector<double> off2_c,
                        double scale);

  std::size_t size() const noexcept { return a_.size(); }
  double scale() const noexcept { return scale_; }
  std::span<const double> diag_a() const noexcept { return a_; }
  std::span<const double> off1_b() const noexcept { return b_; }
  std::span<const double> off2_c() const noexcept { return c_; }

  /// Scaled entry (n, m); zero outside the band.
  double operator()(std::size_t n, std::size_t m) const;
  SymMatrix dense() const;
  /// Matrix-vector product on the stored size.
  std::vector<cplx> apply(std::span<const cplx> v) const;

 private:
  std::vector<double> a_, b_, c_;
  double scale_;
};

/// <phi_n|J|phi_m> for n, m < size: scale -lambda^2/2 times the recursion band.
PentaDiagonalOperator reference_jmatrix(const BasisSpec& basis, const PhysicalParams& params, std::size_t size);

/// Energy-independent split of the reference block: J = H0 - E * Omega, where
/// Omega = <phi_n|phi_m> is the basis overlap (positive definite).
struct ReferenceSplit {
  SymMatrix h0;
  SymMatrix overlap;
};

ReferenceSplit reference_split(const BasisSpec& basis, double nu, double lambda_scale, std::size_t size);

/// Laguerre: int_0^inf J_{s i nu}(mu x) e^{-x/2} x^{(beta-1)/2 + m} dx.
/// Oscillator: int_0^inf J_{s i nu}(mu x) e^{-x^2/2} x^{beta + 2m} dx.
/// Evaluated from the closed forms in log space; returns the logarithm.
cplx log_closed_form_integral(const BasisSpec& basis, const PhysicalParams& params, long m, Sign s,
                              const AccuracyBudget& budget = {});
cplx closed_form_integral(const BasisSpec& basis, const PhysicalParams& params, long m, Sign s,
                          const AccuracyBudget& budget = {});

struct InitialCoefficients {
  cplx f0_plus, f0_minus, f1_plus, f1_minus;
};

/// F_0 and F_1 from their closed forms; minus values are the conjugates.
InitialCoefficients initial_coefficients(const BasisSpec& basis, const PhysicalParams& params,
                                         const AccuracyBudget& budget = {});

/// F_n^+ and F_n^- from the finite alternating sum over closed-form integrals.
/// Cancellation grows with n; intended for n <= 3.
std::pair<cplx, cplx> coefficients_by_series(const BasisSpec& basis, const PhysicalParams& params, long n,
                                             const AccuracyBudget& budget = {});

/// F_2 and F_3 from F_0 and F_1 via the first two rows of the recursion.
std::pair<cplx, cplx> seed_f2_f3(const BasisSpec& basis, const PhysicalParams& params, cplx f0, cplx f1);

enum class ExpansionMethod { direct, ratio };
enum class Precision { standard, extended };

std::string to_string(Precision p);
Precision precision_from_string(const std::string& s);

/// F_n^+ and F_n^- for n < count. minus[n] == conj(plus[n]) exactly.
struct ExpansionCoefficients {
  std::vector<cplx> plus;
  std::vector<cplx> minus;
  std::size_t n_max = 0;
  /// Precision-degradation notes from residual monitoring; empty when clean.
  std::vector<std::string> warnings;
};

/// count >= 4. Throws ZeroDivisorError (with the index) when a ratio or c_n vanishes.
ExpansionCoefficients expand_coefficients(const BasisSpec& basis, const PhysicalParams& params, std::size_t count,
                                          ExpansionMethod method = ExpansionMethod::ratio,
                                          Precision precision = Precision::standard);

/// |a_n F_n + ... + c_n F_{n+2}| / max |F_{n-2..n+2}| for 2 <= n <= count - 3.
double recursion_residual(const BasisSpec& basis, const PhysicalParams& params, std::span<const cplx> f,
                          std::size_t n);

/// Normalized basis function phi_n(x), x = lambda r (Laguerre) or the same x with
/// polynomial argument x^2 (oscillator).
double basis_eval(const BasisSpec& basis, std::size_t n, double x);
/// phi_0(x) .. phi_{count-1}(x).
std::vector<double> basis_values(const BasisSpec& basis, std::size_t count, double x);

/// Partial sums sum_{n < terms} F_n^s phi_n(x) over `grid` (x = lambda r).
std::vector<cplx> reconstruct_reference(const BasisSpec& basis, const ExpansionCoefficients& coeffs,
                                        std::span<const double> grid, std::size_t terms, Sign s = Sign::plus);

}  // namespace jmatrix
