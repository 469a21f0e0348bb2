#include "jmatrix/smatrix.hpp"

#include <cmath>
#include <numbers>

#include "jmatrix/errors.hpp"
#include "jmatrix/linalg.hpp"

namespace jmatrix {
namespace {

using std::numbers::pi;

void require_size(std::size_t n) {
  if (n < 5) throw DomainError("inner problem size must be >= 5");
}

// J_{n,m} of the reference operator at the given energy.
double coupling(const BasisSpec& basis, const PhysicalParams& p, std::size_t n, std::size_t m) {
  const double scale = -0.5 * p.lambda() * p.lambda();
  const auto rc = recursion_coefficients(basis, p, static_cast<long>(std::min(n, m)));
  switch (std::max(n, m) - std::min(n, m)) {
    case 0: return scale * rc.a;
    case 1: return scale * rc.b;
    case 2: return scale * rc.c;
    default: return 0.0;
  }
}

void check_compatible(const InnerProblem& inner, const PhysicalParams& params) {
  if (std::abs(inner.nu() - params.nu()) > 1e-12 * std::max(1.0, params.nu()) ||
      std::abs(inner.lambda() - params.lambda()) > 1e-12 * params.lambda())
    throw DomainError("s_matrix: parameters do not match the prepared inner problem");
}

struct Evaluation {
  ExpansionCoefficients coeffs;
  BoundaryInputs inputs;
};

Evaluation evaluate_inputs(const InnerProblem& inner, const PhysicalParams& params, std::size_t count) {
  check_compatible(inner, params);
  const std::size_t n = inner.size();
  const BasisSpec& basis = inner.basis();
  Evaluation ev{expand_coefficients(basis, params, count, ExpansionMethod::ratio, inner.options().precision), {}};
  const auto kin = kinematic_coefficients(ev.coeffs, n + 1);
  const double energy = 0.5 * params.k() * params.k();
  const FiniteGreen& g = inner.green();
  auto& in = ev.inputs;
  in.g_last_last = green_element(g, n - 1, n - 1, energy);
  in.g_last_prev = green_element(g, n - 1, n - 2, energy);
  in.g_prev_prev = green_element(g, n - 2, n - 2, energy);
  in.j_last_n = coupling(basis, params, n - 1, n);
  in.j_prev_n = coupling(basis, params, n - 2, n);
  in.j_last_n1 = coupling(basis, params, n - 1, n + 1);
  in.t_last = kin.t[n - 1];
  in.r_n_plus = kin.r_plus[n];
  in.r_n1_plus = kin.r_plus[n + 1];
#ifndef NDEBUG
  if (n <= 64) {
    const double alt = green_element_eigenvalue_only(g, n - 1, n - 1, energy);
    if (std::abs(alt - in.g_last_last) > 1e-6 * (1.0 + std::abs(alt)))
      throw ConvergenceError("s_matrix: spectral and eigenvalue-only Green elements disagree");
  }
#endif
  return ev;
}

ScatteringResult finish(const InnerProblem& inner, const Evaluation& ev, cplx s) {
  ScatteringResult r;
  r.s = s;
  r.n = inner.size();
  r.basis = inner.basis();
  r.inputs = ev.inputs;
  r.unitarity_defect = std::abs(std::abs(s) - 1.0);
  const cplx plus = boundary_bracket(ev.inputs, Sign::plus), minus = boundary_bracket(ev.inputs, Sign::minus);
  r.conjugacy_defect = std::abs(minus - std::conj(plus)) / std::abs(plus);
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
    throw ZeroDivisorError("s_matrix: boundary bracket vanishes (reference-only problem?)",
                           static_cast<std::ptrdiff_t>(inner.size() - 1));
  r.delta = phase_shift(s);
  if (!inner.tail_ok())
    r.warnings.push_back("potential tail not negligible: last column ratio " + std::to_string(inner.tail_ratio()));
  for (const auto& w : ev.coeffs.warnings) r.warnings.push_back(w);
  return r;
}

}  // namespace

KinematicCoefficients kinematic_coefficients(const ExpansionCoefficients& coeffs, std::size_t upto) {
  if (upto >= coeffs.plus.size() || upto >= coeffs.minus.size())
    throw DomainError("kinematic_coefficients: not enough expansion coefficients");
  KinematicCoefficients k;
  k.t.resize(upto + 1);
  k.r_plus.resize(upto + 1);
  k.r_minus.resize(upto + 1);
  for (std::size_t n = 0; n <= upto; ++n) {
    if (coeffs.minus[n] == 0.0)
      throw ZeroDivisorError("kinematic_coefficients: F_n^- vanishes", static_cast<std::ptrdiff_t>(n));
    k.t[n] = coeffs.plus[n] / coeffs.minus[n];
    if (n > 0) {
      if (coeffs.plus[n - 1] == 0.0 || coeffs.minus[n - 1] == 0.0)
        throw ZeroDivisorError("kinematic_coefficients: F_{n-1} vanishes", static_cast<std::ptrdiff_t>(n - 1));
      k.r_plus[n] = coeffs.plus[n] / coeffs.plus[n - 1];
      k.r_minus[n] = coeffs.minus[n] / coeffs.minus[n - 1];
    }
  }
  return k;
}

SymMatrix assemble_inner_operator(const BasisSpec& basis, const PhysicalParams& params, const PotentialModel& model,
                                  std::size_t n, std::size_t quad_order) {
  require_size(n);
  const auto split = reference_split(basis, params.nu(), params.lambda(), n);
  const double energy = 0.5 * params.k() * params.k();
  return axpy_neg(split.h0, energy, split.overlap) + potential_matrix(basis, model, params.lambda(), n, quad_order);
}

InnerProblem::InnerProblem(const BasisSpec& basis, double nu, double lambda_scale, const PotentialModel& model,
                           std::size_t n, const ScatterOptions& options)
    : basis_(basis), nu_(nu), lambda_(lambda_scale), n_(n), options_(options) {
  require_size(n);
  auto split = reference_split(basis, nu, lambda_scale, n);
  potential_ = potential_matrix(basis, model, lambda_scale, n, options.quad_order);
  double total = 0.0, last = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double v = potential_(i, j) * potential_(i, j);
      total += v;
      if (j == n - 1) last += v;
    }
  tail_ratio_ = total > 0.0 ? std::sqrt(last / total) : 0.0;
  green_ = std::make_shared<FiniteGreen>(split.h0 + potential_, std::move(split.overlap), 2);
}

cplx boundary_bracket(const BoundaryInputs& in, Sign s) {
  const cplx rn = s == Sign::plus ? in.r_n_plus : std::conj(in.r_n_plus);
  const cplx rn1 = s == Sign::plus ? in.r_n1_plus : std::conj(in.r_n1_plus);
  return 1.0 + (in.g_last_last * in.j_last_n + in.g_last_prev * in.j_prev_n) * rn +
         in.g_last_last * in.j_last_n1 * rn1 * rn;
}

cplx s_from_boundary(const BoundaryInputs& in) {
  return in.t_last * boundary_bracket(in, Sign::plus) / boundary_bracket(in, Sign::minus);
}

cplx s_tridiagonal_from_boundary(const BoundaryInputs& in) {
  const cplx w = in.g_last_last * in.j_last_n;
  return in.t_last * (1.0 + w * in.r_n_plus) / (1.0 + w * std::conj(in.r_n_plus));
}

ScatteringResult s_matrix(const InnerProblem& inner, const PhysicalParams& params) {
  const std::size_t n = inner.size();
  const Evaluation ev = evaluate_inputs(inner, params, n + 2);
  ScatteringResult r = finish(inner, ev, s_from_boundary(ev.inputs));

  // Boundary rows: q from the inner solution against F^+ - S F^-.
  const auto& f = ev.coeffs;
  const auto& in = ev.inputs;
  auto q = [&](std::size_t i) { return f.plus[i] - r.s * f.minus[i]; };
  const cplx rhs_prev = in.j_prev_n * q(n);
  const cplx rhs_last = in.j_last_n * q(n) + in.j_last_n1 * q(n + 1);
  const double energy = 0.5 * params.k() * params.k();
  const double g_prev_last = green_element(inner.green(), n - 2, n - 1, energy);
  const cplx q_prev = -(in.g_prev_prev * rhs_prev + g_prev_last * rhs_last);
  const cplx q_last = -(in.g_last_prev * rhs_prev + in.g_last_last * rhs_last);
  r.boundary_defect[0] = std::abs(q_prev - q(n - 2)) / std::abs(q(n - 2));
  r.boundary_defect[1] = std::abs(q_last - q(n - 1)) / std::abs(q(n - 1));
  for (int i = 0; i < 2; ++i)
    if (r.boundary_defect[i] > 1e-8)
      r.warnings.push_back("boundary row " + std::string(i == 0 ? "N-2" : "N-1") + " mismatch " +
                           std::to_string(r.boundary_defect[i]));
  return r;
}

ScatteringResult s_matrix(const BasisSpec& basis, const PhysicalParams& params, const PotentialModel& model,
                          std::size_t n, const ScatterOptions& options) {
  return s_matrix(InnerProblem(basis, params.nu(), params.lambda(), model, n, options), params);
}

ScatteringResult s_matrix_tridiagonal_limit(const InnerProblem& inner, const PhysicalParams& params) {
  const Evaluation ev = evaluate_inputs(inner, params, inner.size() + 2);
  return finish(inner, ev, s_tridiagonal_from_boundary(ev.inputs));
}

ScatteringResult s_matrix_tridiagonal_limit(const BasisSpec& basis, const PhysicalParams& params,
                                            const PotentialModel& model, std::size_t n,
                                            const ScatterOptions& options) {
  return s_matrix_tridiagonal_limit(InnerProblem(basis, params.nu(), params.lambda(), model, n, options), params);
}

OuterSolution outer_coefficients(const InnerProblem& inner, const PhysicalParams& params,
                                 const ScatteringResult& result, std::size_t outer_count) {
  check_compatible(inner, params);
  const std::size_t n = inner.size();
  if (outer_count < 4) throw DomainError("outer_coefficients: need at least 4 outer terms");
  const auto f = expand_coefficients(inner.basis(), params, std::max(n + 2, n - 2 + outer_count),
                                     ExpansionMethod::ratio, inner.options().precision);
  OuterSolution sol;
  sol.first_outer = n - 2;
  sol.outer.resize(outer_count);
  for (std::size_t i = 0; i < outer_count; ++i) sol.outer[i] = f.plus[n - 2 + i] - result.s * f.minus[n - 2 + i];
  const cplx q_n = sol.outer[2], q_n1 = sol.outer[3];

  const double energy = 0.5 * params.k() * params.k();
  const auto& g = inner.green();
  const SymMatrix a = axpy_neg(g.h(), energy, g.omega());
  std::vector<cplx> rhs(n, 0.0);
  rhs[n - 2] = -coupling(inner.basis(), params, n - 2, n) * q_n;
  rhs[n - 1] = -(coupling(inner.basis(), params, n - 1, n) * q_n + coupling(inner.basis(), params, n - 1, n + 1) * q_n1);
  sol.inner = solve_dense(a.dense(), rhs);

  const double gpp = green_element(g, n - 2, n - 2, energy), gpl = green_element(g, n - 2, n - 1, energy),
               gll = green_element(g, n - 1, n - 1, energy);
  sol.boundary_q = {gpp * rhs[n - 2] + gpl * rhs[n - 1], gpl * rhs[n - 2] + gll * rhs[n - 1]};
  return sol;
}

double stitched_row_residual(const InnerProblem& inner, const PhysicalParams& params, const OuterSolution& sol,
                             std::size_t row) {
  const std::size_t n = inner.size();
  const std::size_t last = sol.first_outer + sol.outer.size();
  if (row + 2 >= last) throw DomainError("stitched_row_residual: not enough outer terms for this row");
  auto coeff = [&](std::size_t m) { return m < sol.first_outer ? sol.inner[m] : sol.outer[m - sol.first_outer]; };
  cplx sum = 0.0;
  double scale = 0.0;
  const std::size_t lo = row >= 2 ? row - 2 : 0;
  auto add = [&](cplx term) {
    sum += term;
    scale = std::max(scale, std::abs(term));
  };
  for (std::size_t m = lo; m <= row + 2; ++m) add(coupling(inner.basis(), params, row, m) * coeff(m));
  if (row < n)
    for (std::size_t m = 0; m < n; ++m) add(inner.potential()(row, m) * coeff(m));
  return scale > 0.0 ? std::abs(sum) / scale : 0.0;
}

double phase_shift(cplx s, double tolerance) {
  const double defect = std::abs(std::abs(s) - 1.0);
  if (!(defect <= tolerance))
    throw UnitarityError("phase_shift: ||S| - 1| = " + std::to_string(defect) + " exceeds tolerance");
  const double d = 0.5 * std::arg(s);
  return d <= -0.5 * pi ? d + pi : d;
}

std::vector<double> unwrap_phases(const std::vector<double>& delta) {
  std::vector<double> out(delta);
  bool have = false;
  double prev = 0.0;
  for (double& d : out) {
    if (std::isnan(d)) continue;
    if (have) d -= pi * std::round((d - prev) / pi);
    prev = d;
    have = true;
  }
  return out;
}

ConvergenceReport converge_s_matrix(const BasisSpec& basis, const PhysicalParams& params, const PotentialModel& model,
                                    std::size_t n_start, std::size_t n_max, double tol,
                                    const ScatterOptions& options) {
  if (n_start < 5 || n_max < n_start) throw DomainError("converge_s_matrix: need 5 <= n_start <= n_max");
  if (!(tol > 0.0)) throw DomainError("converge_s_matrix: tolerance must be positive");
  ConvergenceReport rep;
  for (std::size_t n = n_start;; n = std::min(2 * n, n_max)) {
    rep.result = s_matrix(basis, params, model, n, options);
    if (!rep.deltas.empty()) {
      const double diff = rep.result.delta - rep.deltas.back();
      if (std::abs(diff - pi * std::round(diff / pi)) < tol) rep.converged = true;
    }
    rep.sizes.push_back(n);
    rep.deltas.push_back(rep.result.delta);
    if (rep.converged || n == n_max) break;
  }
  if (!rep.converged)
    rep.result.warnings.push_back("phase shift not converged up to N = " + std::to_string(rep.sizes.back()));
  return rep;
}

}  // namespace jmatrix
