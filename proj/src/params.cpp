#include "jmatrix/params.hpp"

#include <cmath>

#include "jmatrix/errors.hpp"

namespace jmatrix {

double effective_nu(int ell, double strength_A) {
  if (ell < 0) throw DomainError("angular momentum must be non-negative");
  if (!std::isfinite(strength_A)) throw DomainError("coupling strength must be finite");
  const double h = ell + 0.5;
  const double nu2 = strength_A - h * h;
  if (!(nu2 > 0.0))
    throw RegimeError("coupling is not supercritical: A = " + std::to_string(strength_A) +
                      " <= (l + 1/2)^2 = " + std::to_string(h * h));
  return std::sqrt(nu2);
}

PhysicalParams::PhysicalParams(int ell, double strength_A, double k, double lambda_scale)
    : ell_(ell), strength_(strength_A), k_(k), lambda_(lambda_scale) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("wavenumber k must be positive");
  if (!(lambda_scale > 0.0) || !std::isfinite(lambda_scale))
    throw DomainError("basis scale lambda must be positive");
  nu_ = effective_nu(ell, strength_A);
}

PhysicalParams PhysicalParams::from_mu_nu(double mu, double nu, double lambda_scale) {
  return {0, nu * nu + 0.25, mu * lambda_scale, lambda_scale};
}

std::string to_string(BasisFamily f) {
  return f == BasisFamily::laguerre ? "laguerre" : "oscillator";
}

BasisFamily basis_family_from_string(const std::string& s) {
  if (s == "laguerre") return BasisFamily::laguerre;
  if (s == "oscillator") return BasisFamily::oscillator;
  throw DomainError("unknown basis family '" + s + "'");
}

BasisSpec::BasisSpec(BasisFamily family, double beta) : family_(family), beta_(beta) {
  if (!(beta > -1.0) || !std::isfinite(beta)) throw DomainError("basis parameter beta must exceed -1");
}

double BasisSpec::alpha() const noexcept {
  return family_ == BasisFamily::laguerre ? 0.5 * (beta_ + 2.0) : beta_ + 1.5;
}

}  // namespace jmatrix
