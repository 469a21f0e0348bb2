#pragma once

#include <complex>

#include "jmatrix/params.hpp"

namespace jmatrix {

using cplx = std::complex<double>;

/// Target relative error and term limit shared by every series evaluation.
struct AccuracyBudget {
  double target_rel_err = 1e-12;
  long max_terms = 1'000'000;

  /// Throws DomainError on a non-positive tolerance or term limit.
  void validate() const;
};

/// log Gamma(z) on the branch continuous away from the negative real axis
/// (exp of the result is Gamma(z)). Throws PoleError at 0, -1, -2, ...
cplx ln_gamma(cplx z);

/// 1/Gamma(z); exactly zero at the poles of Gamma.
cplx reciprocal_gamma(cplx z);

/// Argument above which J_{i nu} switches from the ascending series to the
/// Hankel asymptotic expansion.
double bessel_switch_point(double nu);

/// Bessel function of imaginary order, J_{s i nu}(y) for nu > 0, y > 0.
/// The minus sign returns the complex conjugate of the plus value.
cplx bessel_j_imag_order(Sign s, double nu, double y, const AccuracyBudget& budget = {});

enum class HankelScaling {
  log_space,  ///< exponential factors combined in log space before exponentiation
  naive,      ///< textbook combination; throws OverflowError if an intermediate overflows
};

/// H^{s}_{i nu}(y) = J_{i nu}(y) + s i Y_{i nu}(y).
cplx hankel_imag_order(Sign s, double nu, double y, const AccuracyBudget& budget = {},
                       HankelScaling scaling = HankelScaling::log_space);

/// A_s H^{s}_{i nu}(y) with A_s = e^{-s pi nu/2}. Stays O(1/sqrt(y)) for any nu.
cplx normalized_hankel(Sign s, double nu, double y, const AccuracyBudget& budget = {});

/// Exact reference solution chi_s(r) = A_s sqrt(kr) H^s_{i nu}(kr).
/// Tends to sqrt(2/pi) exp(s i (kr - pi/4)) for large kr.
cplx chi_reference(Sign s, const PhysicalParams& params, double r,
                   const AccuracyBudget& budget = {});

/// Gauss hypergeometric 2F1(a, b; c; z) for 0 <= z < 1.
cplx hyp2f1(cplx a, cplx b, cplx c, double z, const AccuracyBudget& budget = {});

/// Confluent hypergeometric 1F1(a; c; z). Negative z goes through the Kummer
/// transformation 1F1(a; c; z) = e^z 1F1(c - a; c; -z).
cplx hyp1f1(cplx a, cplx c, double z, const AccuracyBudget& budget = {});

/// Associated Legendre function of the first kind on [0, 1]:
///   P^lam_gam(x) = 2^lam / Gamma(1 - lam) (1 - x^2)^{-lam/2}
///                  2F1((1 + gam - lam)/2, -(gam + lam)/2; 1 - lam; 1 - x^2)
cplx assoc_legendre_p(cplx lam, cplx gam, double x, const AccuracyBudget& budget = {});

namespace detail {

/// e^{-pi nu / 2} J_{i nu}(y) from the ascending series (extended precision sum).
cplx bessel_series_scaled(double nu, double y, const AccuracyBudget& budget = {});

/// A_+ H^+_{i nu}(y) from the large-argument expansion. `error_estimate`, when
/// given, receives the magnitude of the last retained term relative to the sum.
cplx normalized_hankel_plus_asymptotic(double nu, double y, const AccuracyBudget& budget = {},
                                       double* error_estimate = nullptr);

/// Raw Gauss series, no transformation.
cplx hyp2f1_series(cplx a, cplx b, cplx c, double z, const AccuracyBudget& budget = {});
/// Raw confluent series, any sign of z.
cplx hyp1f1_series(cplx a, cplx c, double z, const AccuracyBudget& budget = {});

/// log of 2^lam (1 - x^2)^{-lam/2} / Gamma(1 - lam); throws PoleError at the
/// poles of Gamma(1 - lam).
cplx log_legendre_prefactor(cplx lam, double x);

}  // namespace detail
}  // namespace jmatrix
