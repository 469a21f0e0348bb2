#include "jmatrix/refsol.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <cmath>
#include <numbers>

#include "jmatrix/errors.hpp"

namespace jmatrix {
namespace {

using std::numbers::pi;
using ExtReal = boost::multiprecision::cpp_bin_float_50;
using ExtCplx = boost::multiprecision::cpp_complex_50;

template <class R>
struct Band {
  R a = 0, b = 0, c = 0;
};

// Recursion coefficients evaluated in the arithmetic of R.
template <class R>
Band<R> band_at(const BasisSpec& basis, double nu_d, double mu_d, long n_l) {
  using std::sqrt;
  Band<R> out;
  if (n_l < 0) return out;
  const R n = n_l, beta = basis.beta(), nu = nu_d, mu2 = R(mu_d) * R(mu_d);
  const R q = R(1) / 4;
  const R root2 = sqrt((n + 1) * (n + beta + 1));
  const R root4 = sqrt((n + 1) * (n + 2) * (n + beta + 1) * (n + beta + 2));
  if (basis.family() == BasisFamily::laguerre) {
    const R s = 2 * n + beta + 1;
    out.a = nu * nu + q * (beta * beta - 1) + (mu2 - q) * s * s + (mu2 + q) * (2 * n * (n + beta + 1) + beta + 1);
    out.b = -2 * mu2 * (2 * n + beta + 2) * root2;
    out.c = (mu2 + q) * root4;
  } else {
    out.a = nu * nu + (beta + 1) * (mu2 - 1) - 2 * n * (n + beta + 1 - mu2);
    out.b = -mu2 * root2;
    out.c = root4;
  }
  return out;
}

double log_sinh(double x) { return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0); }

// log of the normalization in front of the finite sum for F_n.
double log_series_norm(const BasisSpec& basis, double mu, long n) {
  const double beta = basis.beta();
  // (beta+1)_n / n! = Gamma(beta+1+n) / (Gamma(beta+1) n!)
  const double log_poch_over_fact =
      std::lgamma(beta + 1.0 + n) - std::lgamma(beta + 1.0) - std::lgamma(n + 1.0);
  const double fam = basis.family() == BasisFamily::oscillator ? std::log(2.0) : 0.0;
  return 0.5 * (fam + std::log(mu) + log_poch_over_fact - std::lgamma(beta + 1.0));
}

// s * [e^{s pi nu/2} e^{L+} - e^{-s pi nu/2} e^{L-}] / sinh(nu pi), combined before exponentiation.
cplx combine_hankel(Sign s, double nu, cplx log_plus, cplx log_minus) {
  const double sg = to_int(s);
  const double ls = log_sinh(pi * nu);
  return sg * (std::exp(sg * 0.5 * pi * nu - ls + log_plus) - std::exp(-sg * 0.5 * pi * nu - ls + log_minus));
}

template <class C>
C cplx_cast(cplx z) {
  if constexpr (std::is_same_v<C, cplx>) {
    return z;
  } else {
    return C(ExtReal(z.real()), ExtReal(z.imag()));
  }
}

template <class C>
cplx to_double(const C& z) {
  if constexpr (std::is_same_v<C, cplx>) {
    return z;
  } else {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
  }
}

template <class R, class C>
std::vector<C> run_direct(const BasisSpec& basis, const PhysicalParams& p, C f0, C f1, std::size_t count) {
  const double nu = p.nu(), mu = p.mu();
  std::vector<Band<R>> band(count + 2);
  for (std::size_t n = 0; n < band.size(); ++n) band[n] = band_at<R>(basis, nu, mu, static_cast<long>(n));
  std::vector<C> f(count);
  f[0] = f0;
  f[1] = f1;
  // The first two rows have no F_{-1}, F_{-2} terms.
  if (band[0].c == R(0)) throw ZeroDivisorError("expand_coefficients: c_n vanishes", 0);
  if (band[1].c == R(0)) throw ZeroDivisorError("expand_coefficients: c_n vanishes", 1);
  f[2] = -(band[0].a * f0 + band[0].b * f1) / band[0].c;
  if (count > 3) f[3] = -(band[0].b * f0 + band[1].a * f1 + band[1].b * f[2]) / band[1].c;
  for (std::size_t n = 2; n + 2 < count; ++n) {
    const auto& bn = band[n];
    if (bn.c == R(0)) throw ZeroDivisorError("expand_coefficients: c_n vanishes", static_cast<std::ptrdiff_t>(n));
    f[n + 2] = -(bn.a * f[n] + band[n - 1].b * f[n - 1] + bn.b * f[n + 1] + band[n - 2].c * f[n - 2]) / bn.c;
  }
  return f;
}

template <class R, class C>
std::vector<C> run_ratio(const BasisSpec& basis, const PhysicalParams& p, C f0, C f1, std::size_t count) {
  const double nu = p.nu(), mu = p.mu();
  std::vector<Band<R>> band(count + 2);
  for (std::size_t n = 0; n < band.size(); ++n) band[n] = band_at<R>(basis, nu, mu, static_cast<long>(n));
  const C f2 = -(band[0].a * f0 + band[0].b * f1) / band[0].c;
  const C f3 = -(band[0].b * f0 + band[1].a * f1 + band[1].b * f2) / band[1].c;
  const C zero = C(0);
  std::vector<C> r(count);
  const C seeds[4] = {f0, f1, f2, f3};
  for (std::size_t n = 1; n < std::min<std::size_t>(4, count); ++n) {
    if (seeds[n - 1] == zero) throw ZeroDivisorError("expand_coefficients: ratio seed divides by zero", static_cast<std::ptrdiff_t>(n - 1));
    r[n] = seeds[n] / seeds[n - 1];
  }
  for (std::size_t n = 2; n + 2 < count; ++n) {
    const auto& bn = band[n];
    if (bn.c == R(0)) throw ZeroDivisorError("expand_coefficients: c_n vanishes", static_cast<std::ptrdiff_t>(n));
    for (std::size_t k : {n - 1, n, n + 1})
      if (r[k] == zero) throw ZeroDivisorError("expand_coefficients: ratio R_n vanishes", static_cast<std::ptrdiff_t>(k));
    r[n + 2] = -bn.b / bn.c - (C(1) / (bn.c * r[n + 1])) * ((C(1) / r[n]) * (band[n - 1].b + band[n - 2].c / r[n - 1]) + bn.a);
  }
  std::vector<C> f(count);
  f[0] = f0;
  for (std::size_t n = 1; n < count; ++n) f[n] = f[n - 1] * r[n];
  return f;
}

template <class R, class C>
std::vector<cplx> expand_in(const BasisSpec& basis, const PhysicalParams& p, cplx f0, cplx f1, std::size_t count,
                            ExpansionMethod method) {
  const C c0 = cplx_cast<C>(f0), c1 = cplx_cast<C>(f1);
  const std::vector<C> f =
      method == ExpansionMethod::direct ? run_direct<R, C>(basis, p, c0, c1, count) : run_ratio<R, C>(basis, p, c0, c1, count);
  std::vector<cplx> out(count);
  for (std::size_t n = 0; n < count; ++n) out[n] = to_double(f[n]);
  return out;
}

}  // namespace

RecursionCoefficients recursion_coefficients(const BasisSpec& basis, const PhysicalParams& params, long n) {
  const auto b = band_at<double>(basis, params.nu(), params.mu(), n);
  return {b.a, b.b, b.c};
}

RecursionSplit recursion_split(const BasisSpec& basis, double nu, long n) {
  // The coefficients are affine in mu^2: evaluate at mu^2 = 0 and mu^2 = 1.
  const auto at0 = band_at<double>(basis, nu, 0.0, n);
  const auto at1 = band_at<double>(basis, nu, 1.0, n);
  return {{at0.a, at0.b, at0.c}, {at1.a - at0.a, at1.b - at0.b, at1.c - at0.c}};
}

PentaDiagonalOperator::PentaDiagonalOperator(std::vector<double> diag_a, std::vector<double> off1_b,
                                             std::vector<double> off2_c, double scale)
    : a_(std::move(diag_a)), b_(std::move(off1_b)), c_(std::move(off2_c)), scale_(scale) {
  if (b_.size() < a_.size() || c_.size() < a_.size())
    throw DomainError("PentaDiagonalOperator: band arrays must cover every row");
}

double PentaDiagonalOperator::operator()(std::size_t n, std::size_t m) const {
  const std::size_t lo = std::min(n, m), hi = std::max(n, m);
  switch (hi - lo) {
    case 0: return scale_ * a_[lo];
    case 1: return scale_ * b_[lo];
    case 2: return scale_ * c_[lo];
    default: return 0.0;
  }
}

SymMatrix PentaDiagonalOperator::dense() const {
  const std::size_t n = size();
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.set(i, i, scale_ * a_[i]);
    if (i + 1 < n) m.set(i, i + 1, scale_ * b_[i]);
    if (i + 2 < n) m.set(i, i + 2, scale_ * c_[i]);
  }
  return m;
}

std::vector<cplx> PentaDiagonalOperator::apply(std::span<const cplx> v) const {
  const std::size_t n = size();
  if (v.size() != n) throw DomainError("PentaDiagonalOperator::apply: length mismatch");
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = a_[i] * v[i];
    if (i >= 1) s += b_[i - 1] * v[i - 1];
    if (i + 1 < n) s += b_[i] * v[i + 1];
    if (i >= 2) s += c_[i - 2] * v[i - 2];
    if (i + 2 < n) s += c_[i] * v[i + 2];
    out[i] = scale_ * s;
  }
  return out;
}

PentaDiagonalOperator reference_jmatrix(const BasisSpec& basis, const PhysicalParams& params, std::size_t size) {
  if (size < 5) throw DomainError("reference_jmatrix: size must be >= 5");
  std::vector<double> a(size), b(size), c(size);
  for (std::size_t n = 0; n < size; ++n) {
    const auto rc = recursion_coefficients(basis, params, static_cast<long>(n));
    a[n] = rc.a;
    b[n] = rc.b;
    c[n] = rc.c;
  }
  const double lam = params.lambda();
  return {std::move(a), std::move(b), std::move(c), -0.5 * lam * lam};
}

ReferenceSplit reference_split(const BasisSpec& basis, double nu, double lambda_scale, std::size_t size) {
  if (!(lambda_scale > 0.0)) throw DomainError("reference_split: lambda must be positive");
  const double scale = -0.5 * lambda_scale * lambda_scale;
  ReferenceSplit out{SymMatrix(size), SymMatrix(size)};
  for (std::size_t n = 0; n < size; ++n) {
    const auto s = recursion_split(basis, nu, static_cast<long>(n));
    out.h0.set(n, n, scale * s.fixed.a);
    out.overlap.set(n, n, s.per_mu2.a);
    if (n + 1 < size) {
      out.h0.set(n, n + 1, scale * s.fixed.b);
      out.overlap.set(n, n + 1, s.per_mu2.b);
    }
    if (n + 2 < size) {
      out.h0.set(n, n + 2, scale * s.fixed.c);
      out.overlap.set(n, n + 2, s.per_mu2.c);
    }
  }
  return out;
}

cplx log_closed_form_integral(const BasisSpec& basis, const PhysicalParams& params, long m, Sign s,
                              const AccuracyBudget& budget) {
  if (m < 0) throw DomainError("closed_form_integral: m must be >= 0");
  const double nu = params.nu(), mu = params.mu(), beta = basis.beta();
  const double sg = to_int(s);
  const double dm = static_cast<double>(m);
  const cplx inu{0.0, sg * nu};
  if (basis.family() == BasisFamily::laguerre) {
    const double root = std::sqrt(4.0 * mu * mu + 1.0);
    const double x = 1.0 / root;
    const double gam = dm + 0.5 * (beta - 1.0);
    const cplx lam = -inu;
    const cplx f = hyp2f1(0.5 * (1.0 + gam - lam), -0.5 * (gam + lam), 1.0 - lam, (1.0 - x) * (1.0 + x), budget);
    const cplx log_p = detail::log_legendre_prefactor(lam, x) + std::log(f);
    return -(dm + 0.5 * (beta + 1.0)) * std::log(0.5 * root) + ln_gamma(dm + 0.5 * (beta + 1.0) + inu) + log_p;
  }
  const double z = 0.5 * mu * mu;
  const cplx f = hyp1f1(-dm + 0.5 * (inu + 1.0 - beta), 1.0 + inu, z, budget);
  return inu * std::log(mu / std::sqrt(2.0)) + ln_gamma(dm + 0.5 * (1.0 + beta + inu)) - ln_gamma(1.0 + inu) -
         (1.0 - 2.0 * dm - beta) * 0.5 * std::log(2.0) - z + std::log(f);
}

cplx closed_form_integral(const BasisSpec& basis, const PhysicalParams& params, long m, Sign s,
                          const AccuracyBudget& budget) {
  return std::exp(log_closed_form_integral(basis, params, m, s, budget));
}

std::pair<cplx, cplx> coefficients_by_series(const BasisSpec& basis, const PhysicalParams& params, long n,
                                             const AccuracyBudget& budget) {
  if (n < 0) throw DomainError("coefficients_by_series: n must be >= 0");
  const double beta = basis.beta();
  const double nu = params.nu();
  const double log_norm = log_series_norm(basis, params.mu(), n);
  cplx plus = 0.0, minus = 0.0;
  double weight = 1.0;  // (-n)_m / ((beta+1)_m m!)
  for (long m = 0; m <= n; ++m) {
    if (m > 0) weight *= (m - 1.0 - n) / ((beta + m) * m);
    const cplx lp = log_closed_form_integral(basis, params, m, Sign::plus, budget) + log_norm;
    const cplx lm = log_closed_form_integral(basis, params, m, Sign::minus, budget) + log_norm;
    plus += weight * combine_hankel(Sign::plus, nu, lp, lm);
    minus += weight * combine_hankel(Sign::minus, nu, lp, lm);
  }
  return {plus, minus};
}

InitialCoefficients initial_coefficients(const BasisSpec& basis, const PhysicalParams& params,
                                         const AccuracyBudget& budget) {
  const double nu = params.nu(), mu = params.mu(), beta = basis.beta();
  const cplx i0p = log_closed_form_integral(basis, params, 0, Sign::plus, budget);
  const cplx i0m = log_closed_form_integral(basis, params, 0, Sign::minus, budget);
  const cplx i1p = log_closed_form_integral(basis, params, 1, Sign::plus, budget);
  const cplx i1m = log_closed_form_integral(basis, params, 1, Sign::minus, budget);
  // F_0 = N_0 [..I_0..];  F_1 = sqrt(beta+1) F_0 - N_0 / sqrt(beta+1) [..I_1..]
  const double l0 = log_series_norm(basis, mu, 0);
  const double l1 = l0 - 0.5 * std::log(beta + 1.0);
  const cplx f0 = combine_hankel(Sign::plus, nu, i0p + l0, i0m + l0);
  const cplx f1 = std::sqrt(beta + 1.0) * f0 - combine_hankel(Sign::plus, nu, i1p + l1, i1m + l1);
  return {f0, std::conj(f0), f1, std::conj(f1)};
}

std::pair<cplx, cplx> seed_f2_f3(const BasisSpec& basis, const PhysicalParams& params, cplx f0, cplx f1) {
  const auto r0 = recursion_coefficients(basis, params, 0);
  const auto r1 = recursion_coefficients(basis, params, 1);
  const cplx f2 = -(r0.a * f0 + r0.b * f1) / r0.c;
  const cplx f3 = (r1.b / r1.c) * ((r0.a / r0.c - r0.b / r1.b) * f0 + (r0.b / r0.c - r1.a / r1.b) * f1);
  return {f2, f3};
}

std::string to_string(Precision p) { return p == Precision::extended ? "extended" : "double"; }

Precision precision_from_string(const std::string& s) {
  if (s == "double" || s == "standard") return Precision::standard;
  if (s == "extended") return Precision::extended;
  throw DomainError("precision must be 'double' or 'extended', got '" + s + "'");
}

double recursion_residual(const BasisSpec& basis, const PhysicalParams& params, std::span<const cplx> f,
                          std::size_t n) {
  if (n < 2 || n + 2 >= f.size()) throw DomainError("recursion_residual: n must lie in [2, size - 3]");
  const auto rn = recursion_coefficients(basis, params, static_cast<long>(n));
  const auto rm1 = recursion_coefficients(basis, params, static_cast<long>(n) - 1);
  const auto rm2 = recursion_coefficients(basis, params, static_cast<long>(n) - 2);
  const cplx res = rn.a * f[n] + rm1.b * f[n - 1] + rn.b * f[n + 1] + rm2.c * f[n - 2] + rn.c * f[n + 2];
  // Scale by the largest term so cancellation is measured, not the size of F.
  double scale = 0.0;
  for (double t : {std::abs(rn.a * f[n]), std::abs(rm1.b * f[n - 1]), std::abs(rn.b * f[n + 1]),
                   std::abs(rm2.c * f[n - 2]), std::abs(rn.c * f[n + 2])})
    scale = std::max(scale, t);
  return scale > 0.0 ? std::abs(res) / scale : 0.0;
}

ExpansionCoefficients expand_coefficients(const BasisSpec& basis, const PhysicalParams& params, std::size_t count,
                                          ExpansionMethod method, Precision precision) {
  if (count < 4) throw DomainError("expand_coefficients: need at least 4 coefficients");
  const InitialCoefficients init = initial_coefficients(basis, params);
  ExpansionCoefficients out;
  out.n_max = count;
  if (method == ExpansionMethod::ratio && std::abs(init.f0_plus) < 1e-12 * std::abs(init.f1_plus)) {
    out.warnings.push_back("F_0 is tiny relative to F_1; ratio seeds unreliable, used direct recursion in extended precision");
    method = ExpansionMethod::direct;
    precision = Precision::extended;
  }
  out.plus = precision == Precision::extended
                 ? expand_in<ExtReal, ExtCplx>(basis, params, init.f0_plus, init.f1_plus, count, method)
                 : expand_in<double, cplx>(basis, params, init.f0_plus, init.f1_plus, count, method);
  out.minus.resize(count);
  for (std::size_t n = 0; n < count; ++n) {
    if (!std::isfinite(out.plus[n].real()) || !std::isfinite(out.plus[n].imag()))
      throw OverflowError("expand_coefficients: non-finite coefficient at n = " + std::to_string(n));
    out.minus[n] = std::conj(out.plus[n]);
  }
  // Residual monitoring on a sparse sample of rows.
  if (count >= 5) {
    const std::size_t stride = std::max<std::size_t>(1, (count - 4) / 64);
    double worst = 0.0;
    std::size_t worst_n = 2;
    for (std::size_t n = 2; n + 2 < count; n += stride) {
      const double r = recursion_residual(basis, params, out.plus, n);
      if (r > worst) {
        worst = r;
        worst_n = n;
      }
    }
    if (worst > 1e-8)
      out.warnings.push_back("recursion residual " + std::to_string(worst) + " at n = " + std::to_string(worst_n));
  }
  return out;
}

std::vector<double> basis_values(const BasisSpec& basis, std::size_t count, double x) {
  if (!(x > 0.0)) throw DomainError("basis_values: x must be positive");
  std::vector<double> out(count);
  if (count == 0) return out;
  const double beta = basis.beta();
  const bool osc = basis.family() == BasisFamily::oscillator;
  const double t = osc ? x * x : x;  // polynomial argument
  // phi_n = scale * p_n(t), p_n orthonormal under t^beta e^{-t} / Gamma(beta + 1).
  double log_scale = -0.5 * t + basis.alpha() * std::log(x) - 0.5 * std::lgamma(beta + 1.0);
  if (osc) log_scale += 0.5 * std::log(2.0);
  constexpr double kBig = 1e150;
  double prev = 0.0, cur = 1.0;
  for (std::size_t n = 0; n < count; ++n) {
    out[n] = std::exp(log_scale) * cur;
    const double dn = static_cast<double>(n);
    const double next = ((2.0 * dn + beta + 1.0 - t) * cur - std::sqrt(dn * (dn + beta)) * prev) /
                        std::sqrt((dn + 1.0) * (dn + beta + 1.0));
    prev = cur;
    cur = next;
    if (std::abs(cur) > kBig) {
      cur /= kBig;
      prev /= kBig;
      log_scale += std::log(kBig);
    }
  }
  return out;
}

double basis_eval(const BasisSpec& basis, std::size_t n, double x) { return basis_values(basis, n + 1, x)[n]; }

std::vector<cplx> reconstruct_reference(const BasisSpec& basis, const ExpansionCoefficients& coeffs,
                                        std::span<const double> grid, std::size_t terms, Sign s) {
  if (terms > coeffs.plus.size()) throw DomainError("reconstruct_reference: more terms than coefficients");
  const auto& f = s == Sign::plus ? coeffs.plus : coeffs.minus;
  std::vector<cplx> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto phi = basis_values(basis, terms, grid[i]);
    cplx sum = 0.0;
    for (std::size_t n = 0; n < terms; ++n) sum += f[n] * phi[n];
    out[i] = sum;
  }
  return out;
}

}  // namespace jmatrix
