#include "jmatrix/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "jmatrix/errors.hpp"

namespace jmatrix {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

// Stirling series, valid once |z| >= 15 and Re z > 0.
cplx stirling_ln_gamma(cplx z) {
  // B_{2k} / (2k (2k - 1)), k = 1..8
  static constexpr std::array<double, 8> kCoef = {
      1.0 / 12.0,           -1.0 / 360.0,          1.0 / 1260.0,
      -1.0 / 1680.0,        1.0 / 1188.0,          -691.0 / 360360.0,
      1.0 / 156.0,          -3617.0 / 122400.0};
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series = 0.0;
  cplx pw = inv;
  for (double c : kCoef) {
    series += c * pw;
    pw *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series;
}

}  // namespace

void AccuracyBudget::validate() const {
  if (!(target_rel_err > 0.0)) throw DomainError("accuracy budget: target_rel_err must be > 0");
  if (max_terms < 1) throw DomainError("accuracy budget: max_terms must be >= 1");
}

cplx ln_gamma(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("ln_gamma: non-finite argument");
  if (is_nonpositive_integer(z))
    throw PoleError("ln_gamma: pole at z = " + std::to_string(z.real()));
  long shift = 0;
  if (z.real() < 0.5 || std::abs(z) < 15.0)
    shift = static_cast<long>(std::ceil(15.0 - z.real()));
  cplx log_product = 0.0;
  for (long k = 0; k < shift; ++k) log_product += std::log(z + static_cast<double>(k));
  return stirling_ln_gamma(z + static_cast<double>(shift)) - log_product;
}

cplx reciprocal_gamma(cplx z) {
  if (is_nonpositive_integer(z)) return 0.0;
  return std::exp(-ln_gamma(z));
}

double bessel_switch_point(double nu) { return 25.0 + 3.0 * nu; }

namespace detail {

namespace {

using boost::multiprecision::cpp_bin_float_100;
using boost::multiprecision::cpp_bin_float_50;

// Sum_k (-y^2/4)^k / (k! (1 + i nu)_k), carried out in type T.
template <class T>
cplx ascending_sum(double nu, double y, const AccuracyBudget& budget) {
  const T v = nu;
  const T yy = y;
  const T q = -(yy * yy) / 4;
  const T eps = std::numeric_limits<T>::epsilon() * 16;
  T tr = 1, ti = 0, sr = 1, si = 0;
  const long k_min = static_cast<long>(y / 2.0) + 2;
  for (long k = 1;; ++k) {
    if (k > budget.max_terms)
      throw ConvergenceError("Bessel ascending series exceeded the term budget");
    const T kk = k;
    const T den = kk * (kk * kk + v * v);
    // t <- t * q / (k (k + i nu))
    const T nr = (tr * kk + ti * v) * q / den;
    const T ni = (ti * kk - tr * v) * q / den;
    tr = nr;
    ti = ni;
    sr += tr;
    si += ti;
    if (k >= k_min) {
      const T tmag = abs(tr) + abs(ti);
      const T smag = abs(sr) + abs(si);
      if (tmag <= eps * smag) break;
    }
  }
  return {static_cast<double>(sr), static_cast<double>(si)};
}

}  // namespace

cplx bessel_series_scaled(double nu, double y, const AccuracyBudget& budget) {
  if (!(nu > 0.0) || !(y > 0.0)) throw DomainError("bessel: nu and y must be positive");
  budget.validate();
  // The sum loses about y / ln(10) digits to cancellation.
  const cplx sum = y <= 30.0 ? ascending_sum<cpp_bin_float_50>(nu, y, budget)
                             : ascending_sum<cpp_bin_float_100>(nu, y, budget);
  const cplx log_pref = kI * nu * std::log(0.5 * y) - ln_gamma(cplx(1.0, nu)) - 0.5 * kPi * nu;
  return std::exp(log_pref) * sum;
}

cplx normalized_hankel_plus_asymptotic(double nu, double y, const AccuracyBudget& budget,
                                       double* error_estimate) {
  if (!(nu > 0.0) || !(y > 0.0)) throw DomainError("hankel: nu and y must be positive");
  budget.validate();
  // a_k(i nu) = prod_j (-(4 nu^2 + (2j - 1)^2)) / (k! 8^k), real for imaginary order.
  const double four_nu2 = 4.0 * nu * nu;
  cplx sum = 1.0;
  double a = 1.0;
  cplx ik = 1.0;
  double last = std::numeric_limits<double>::infinity();
  double rel = 0.0;
  for (long k = 1; k <= budget.max_terms; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= -(four_nu2 + odd * odd) / (8.0 * k * y);
    ik *= kI;
    const cplx term = ik * a;
    const double mag = std::abs(term);
    if (mag > last) break;  // asymptotic series started to diverge
    sum += term;
    last = mag;
    rel = mag / std::abs(sum);
    if (rel < 0.01 * budget.target_rel_err) break;
  }
  if (error_estimate) *error_estimate = rel;
  return std::sqrt(2.0 / (kPi * y)) * std::exp(kI * (y - 0.25 * kPi)) * sum;
}

}  // namespace detail

namespace {

// A_+ H^+_{i nu}(y) from the scaled series value e^{-pi nu/2} J_{i nu}(y):
//   A_+ H^+ = [e^{pi nu/2} J_{i nu} - e^{-pi nu/2} J_{-i nu}] / sinh(pi nu)
//           = c1 Jhat - c2 conj(Jhat),  c1 = 2/(1 - e^{-2 pi nu}), c2 = c1 e^{-pi nu}.
cplx normalized_hankel_plus_from_series(double nu, double y, const AccuracyBudget& budget) {
  const cplx jhat = detail::bessel_series_scaled(nu, y, budget);
  const double em = std::exp(-kPi * nu);
  const double c1 = 2.0 / (-std::expm1(-2.0 * kPi * nu));
  return c1 * jhat - c1 * em * std::conj(jhat);
}

void check_positive(double nu, double y) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("order nu must be positive");
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("argument y must be positive");
}

}  // namespace

cplx normalized_hankel(Sign s, double nu, double y, const AccuracyBudget& budget) {
  check_positive(nu, y);
  const cplx plus = y <= bessel_switch_point(nu)
                        ? normalized_hankel_plus_from_series(nu, y, budget)
                        : detail::normalized_hankel_plus_asymptotic(nu, y, budget);
  return s == Sign::plus ? plus : std::conj(plus);
}

cplx bessel_j_imag_order(Sign s, double nu, double y, const AccuracyBudget& budget) {
  check_positive(nu, y);
  cplx jp;
  if (y <= bessel_switch_point(nu)) {
    jp = std::exp(0.5 * kPi * nu) * detail::bessel_series_scaled(nu, y, budget);
  } else {
    // J = (H^+ + H^-)/2 with H^+ = e^{pi nu/2} A_+H^+ and H^- = e^{-pi nu/2} conj(A_+H^+).
    const cplx h = detail::normalized_hankel_plus_asymptotic(nu, y, budget);
    jp = 0.5 * (std::exp(0.5 * kPi * nu) * h + std::exp(-0.5 * kPi * nu) * std::conj(h));
  }
  return s == Sign::plus ? jp : std::conj(jp);
}

cplx hankel_imag_order(Sign s, double nu, double y, const AccuracyBudget& budget,
                       HankelScaling scaling) {
  check_positive(nu, y);
  const double sgn = to_int(s);
  if (scaling == HankelScaling::naive) {
    const cplx jp = bessel_j_imag_order(Sign::plus, nu, y, budget);
    const cplx jm = std::conj(jp);
    const double ep = std::exp(kPi * nu);
    const double sh = std::sinh(kPi * nu);
    if (!std::isfinite(ep) || !std::isfinite(sh) || !std::isfinite(jp.real()) ||
        !std::isfinite(jp.imag()))
      throw OverflowError("hankel_imag_order: unscaled evaluation overflows for nu = " +
                          std::to_string(nu));
    // H^+ = (e^{pi nu} J_{i nu} - J_{-i nu}) / sinh, H^- = (J_{-i nu} - e^{-pi nu} J_{i nu}) / sinh
    const cplx h = s == Sign::plus ? (ep * jp - jm) / sh : (jm - jp / ep) / sh;
    return h;
  }
  const cplx nh = normalized_hankel(s, nu, y, budget);
  const double log_scale = sgn * 0.5 * kPi * nu;  // 1 / A_s
  const double mag = std::log(std::abs(nh)) + log_scale;
  if (mag > std::log(std::numeric_limits<double>::max()))
    throw OverflowError("hankel_imag_order: result exceeds the double range");
  return nh * std::exp(log_scale);
}

cplx chi_reference(Sign s, const PhysicalParams& params, double r, const AccuracyBudget& budget) {
  if (!(r > 0.0)) throw DomainError("chi_reference: r must be positive");
  const double y = params.k() * r;
  return std::sqrt(y) * normalized_hankel(s, params.nu(), y, budget);
}

// ---------------------------------------------------------------- hypergeometric

namespace detail {

cplx hyp2f1_series(cplx a, cplx b, cplx c, double z, const AccuracyBudget& budget) {
  budget.validate();
  if (is_nonpositive_integer(c)) throw PoleError("hyp2f1: c is a non-positive integer");
  cplx term = 1.0;
  cplx sum = 1.0;
  int quiet = 0;
  for (long k = 0;; ++k) {
    if (k >= budget.max_terms) throw ConvergenceError("hyp2f1: series exceeded the term budget");
    const double kk = static_cast<double>(k);
    const cplx ratio = (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * z;
    term *= ratio;
    if (term == 0.0) break;  // terminating series
    sum += term;
    // Tail bound once the ratio settles below one: |term| r / (1 - r).
    const double r = std::abs(ratio);
    const double tail = r < 1.0 ? std::abs(term) * r / (1.0 - r) : std::abs(term);
    if (r < 1.0 && tail <= 0.1 * budget.target_rel_err * std::abs(sum)) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
  }
  return sum;
}

cplx hyp1f1_series(cplx a, cplx c, double z, const AccuracyBudget& budget) {
  budget.validate();
  if (is_nonpositive_integer(c)) throw PoleError("hyp1f1: c is a non-positive integer");
  cplx term = 1.0;
  cplx sum = 1.0;
  int quiet = 0;
  for (long k = 0;; ++k) {
    if (k >= budget.max_terms) throw ConvergenceError("hyp1f1: series exceeded the term budget");
    const double kk = static_cast<double>(k);
    const cplx ratio = (a + kk) / ((c + kk) * (kk + 1.0)) * z;
    term *= ratio;
    if (term == 0.0) break;
    sum += term;
    const double r = std::abs(ratio);
    const double tail = r < 1.0 ? std::abs(term) * r / (1.0 - r) : std::abs(term);
    if (r < 0.5 && tail <= 0.1 * budget.target_rel_err * std::abs(sum)) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
  }
  return sum;
}

cplx log_legendre_prefactor(cplx lam, double x) {
  if (is_nonpositive_integer(1.0 - lam))
    throw PoleError("assoc_legendre_p: Gamma(1 - lam) has a pole");
  const double one_minus_x2 = (1.0 - x) * (1.0 + x);
  return lam * std::log(2.0) - ln_gamma(1.0 - lam) - 0.5 * lam * std::log(one_minus_x2);
}

}  // namespace detail

namespace {

// exp(sum lnGamma(num) - sum lnGamma(den)); zero if a denominator sits on a pole.
template <std::size_t N, std::size_t M>
cplx gamma_ratio(const std::array<cplx, N>& num, const std::array<cplx, M>& den) {
  for (const cplx& d : den)
    if (is_nonpositive_integer(d)) return 0.0;
  cplx acc = 0.0;
  for (const cplx& n : num) acc += ln_gamma(n);
  for (const cplx& d : den) acc -= ln_gamma(d);
  return std::exp(acc);
}

}  // namespace

cplx hyp2f1(cplx a, cplx b, cplx c, double z, const AccuracyBudget& budget) {
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError("hyp2f1: z must lie in [0, 1]");
  if (is_nonpositive_integer(c)) throw PoleError("hyp2f1: c is a non-positive integer");
  if (z == 0.0 || a == 0.0 || b == 0.0) return 1.0;
  const cplx s = c - a - b;
  const bool near_integer = std::abs(s.imag()) < 1e-3 && std::abs(s.real() - std::round(s.real())) < 1e-3;
  const bool terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
  if (z == 1.0) {
    // Gauss summation; the series diverges at z = 1 unless Re(c - a - b) > 0.
    if (terminating) return detail::hyp2f1_series(a, b, c, z, budget);
    if (s.real() <= 0.0) throw DomainError("hyp2f1: divergent at z = 1 for Re(c - a - b) <= 0");
    return gamma_ratio<2, 2>({c, s}, {c - a, c - b});
  }
  if (z <= 0.9 || near_integer || terminating) return detail::hyp2f1_series(a, b, c, z, budget);
  // z -> 1 - z connection formula.
  const double w = 1.0 - z;
  const cplx g1 = gamma_ratio<2, 2>({c, s}, {c - a, c - b});
  const cplx g2 = gamma_ratio<2, 2>({c, -s}, {a, b});
  cplx result = 0.0;
  if (g1 != 0.0) result += g1 * detail::hyp2f1_series(a, b, 1.0 - s, w, budget);
  if (g2 != 0.0) result += g2 * std::pow(cplx(w), s) * detail::hyp2f1_series(c - a, c - b, 1.0 + s, w, budget);
  return result;
}

cplx hyp1f1(cplx a, cplx c, double z, const AccuracyBudget& budget) {
  if (!std::isfinite(z)) throw DomainError("hyp1f1: z must be finite");
  if (is_nonpositive_integer(c)) throw PoleError("hyp1f1: c is a non-positive integer");
  if (z == 0.0) return 1.0;
  if (z < 0.0) return std::exp(z) * detail::hyp1f1_series(c - a, c, -z, budget);
  return detail::hyp1f1_series(a, c, z, budget);
}

cplx assoc_legendre_p(cplx lam, cplx gam, double x, const AccuracyBudget& budget) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("assoc_legendre_p: x must lie in [0, 1]");
  if (is_nonpositive_integer(1.0 - lam))
    throw PoleError("assoc_legendre_p: Gamma(1 - lam) has a pole");
  if (x == 1.0) {
    if (lam == 0.0) return 1.0;
    if (lam.real() < 0.0) return 0.0;
    throw DomainError("assoc_legendre_p: (1 - x^2)^{-lam/2} is undefined at x = 1");
  }
  const double w = (1.0 - x) * (1.0 + x);
  const cplx f = hyp2f1(0.5 * (1.0 + gam - lam), -0.5 * (gam + lam), 1.0 - lam, w, budget);
  return std::exp(detail::log_legendre_prefactor(lam, x)) * f;
}

}  // namespace jmatrix
