#pragma once

#include <string>

namespace jmatrix {

enum class Sign : int { minus = -1, plus = +1 };

constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }
constexpr Sign flip(Sign s) noexcept { return s == Sign::plus ? Sign::minus : Sign::plus; }

/// nu = sqrt(A - (l + 1/2)^2). Throws RegimeError unless the coupling is supercritical.
double effective_nu(int ell, double strength_A);

/// Physical input of one scattering configuration: V(r) = -A/(2 r^2) + U(r),
/// wavenumber k (E = k^2/2) and basis scale lambda (inverse length).
class PhysicalParams {
 public:
  /// Validates every field; throws DomainError / RegimeError.
  PhysicalParams(int ell, double strength_A, double k, double lambda_scale);

  /// Convenience constructor from the dimensionless pair (mu, nu) at l = 0.
  static PhysicalParams from_mu_nu(double mu, double nu, double lambda_scale = 1.0);

  int ell() const noexcept { return ell_; }
  double strength() const noexcept { return strength_; }
  double k() const noexcept { return k_; }
  double lambda() const noexcept { return lambda_; }
  double nu() const noexcept { return nu_; }
  double mu() const noexcept { return k_ / lambda_; }
  double energy() const noexcept { return 0.5 * k_ * k_; }

  /// Same physics at a different wavenumber.
  PhysicalParams with_k(double k) const { return {ell_, strength_, k, lambda_}; }

 private:
  int ell_;
  double strength_;
  double k_;
  double lambda_;
  double nu_;
};

enum class BasisFamily { laguerre, oscillator };

std::string to_string(BasisFamily f);
BasisFamily basis_family_from_string(const std::string& s);

/// Laguerre basis: phi_n(x) ~ e^{-x/2} x^alpha L_n^beta(x) with 2 alpha = beta + 2.
/// Oscillator basis: phi_n(x) ~ e^{-x^2/2} x^alpha L_n^beta(x^2) with alpha = beta + 3/2.
/// alpha is always derived from beta; no other value can be represented.
class BasisSpec {
 public:
  BasisSpec(BasisFamily family, double beta);
  static BasisSpec laguerre(double beta) { return {BasisFamily::laguerre, beta}; }
  static BasisSpec oscillator(double beta) { return {BasisFamily::oscillator, beta}; }

  BasisFamily family() const noexcept { return family_; }
  double beta() const noexcept { return beta_; }
  double alpha() const noexcept;

  bool operator==(const BasisSpec&) const = default;

 private:
  BasisFamily family_;
  double beta_;
};

}  // namespace jmatrix
