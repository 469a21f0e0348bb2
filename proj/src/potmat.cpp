#include "jmatrix/potmat.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>

#include "jmatrix/errors.hpp"
#include "jmatrix/linalg.hpp"

namespace jmatrix {

double TridiagonalMatrix::operator()(std::size_t i, std::size_t j) const {
  if (i == j) return diag[i];
  if (i + 1 == j) return off[i];
  if (j + 1 == i) return off[j];
  return 0.0;
}

TridiagonalMatrix TridiagonalMatrix::without_first() const {
  if (diag.empty()) throw DomainError("TridiagonalMatrix::without_first: empty matrix");
  TridiagonalMatrix t;
  t.diag.assign(diag.begin() + 1, diag.end());
  if (off.size() > 1) t.off.assign(off.begin() + 1, off.end());
  return t;
}

TridiagonalMatrix jacobi_matrix(double beta, std::size_t order) {
  if (order < 1) throw DomainError("jacobi_matrix: order must be >= 1");
  if (!(beta > -1.0)) throw DomainError("jacobi_matrix: beta must exceed -1");
  TridiagonalMatrix j;
  j.diag.resize(order);
  j.off.resize(order - 1);
  for (std::size_t n = 0; n < order; ++n) {
    const double dn = static_cast<double>(n);
    j.diag[n] = 2.0 * dn + beta + 1.0;
    if (n + 1 < order) j.off[n] = -std::sqrt((dn + 1.0) * (dn + beta + 1.0));
  }
  return j;
}

TridiagonalMatrix jacobi_matrix(const BasisSpec& basis, std::size_t order) {
  return jacobi_matrix(basis.beta(), order);
}

double QuadratureRule::density(double x) const {
  if (x <= 0.0) return 0.0;
  return std::exp(beta * std::log(x) - x - std::lgamma(beta + 1.0));
}

std::vector<double> QuadratureRule::derivative_weights() const {
  std::vector<double> w(order());
  const double lg = std::lgamma(beta + 1.0);
  for (std::size_t k = 0; k < order(); ++k) {
    const double x = nodes[k];
    w[k] = std::exp(log_weights[k] - (beta * std::log(x) - x - lg));
  }
  return w;
}

QuadratureRule nodes_and_weights(const TridiagonalMatrix& j, double beta) {
  for (double b : j.off)
    if (b == 0.0) throw DomainError("nodes_and_weights: off-diagonal entries must be nonzero");
  EigenDecomposition ed = eig_sym_tridiagonal(j.diag, j.off);
  QuadratureRule rule;
  rule.beta = beta;
  rule.nodes = std::move(ed.values);
  rule.vectors = std::move(ed.vectors);
  const std::size_t n = rule.order();
  rule.weights.resize(n);
  rule.log_weights.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (rule.vectors(0, k) < 0.0)
      for (std::size_t r = 0; r < n; ++r) rule.vectors(r, k) = -rule.vectors(r, k);
    const double l0 = rule.vectors(0, k);
    rule.weights[k] = l0 * l0;
    rule.log_weights[k] = 2.0 * std::log(l0);
  }
  return rule;
}

std::vector<double> log_weights_from_eigenvalues(std::span<const double> nodes,
                                                 std::span<const double> sub_nodes) {
  const std::size_t n = nodes.size();
  if (sub_nodes.size() + 1 != n) throw DomainError("weights_from_eigenvalues: sub-spectrum must have order - 1 values");
  std::vector<double> lw(n);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (double s : sub_nodes) acc += std::log(std::abs(nodes[k] - s));
    for (std::size_t i = 0; i < n; ++i)
      if (i != k) acc -= std::log(std::abs(nodes[k] - nodes[i]));
    lw[k] = acc;
  }
  return lw;
}

std::vector<double> weights_from_eigenvalues(const TridiagonalMatrix& j) {
  const auto nodes = eigenvalues_sym_tridiagonal(j.diag, j.off);
  std::vector<double> sub;
  if (j.order() > 1) {
    const TridiagonalMatrix t = j.without_first();
    sub = eigenvalues_sym_tridiagonal(t.diag, t.off);
  }
  auto w = log_weights_from_eigenvalues(nodes, sub);
  for (double& v : w) v = std::exp(v);
  return w;
}

QuadratureRule gauss_rule(double beta, std::size_t order, std::size_t vector_rows) {
  if (vector_rows > order) throw DomainError("gauss_rule: more vector rows than nodes");
  const TridiagonalMatrix j = jacobi_matrix(beta, order);
  QuadratureRule rule;
  rule.beta = beta;
  rule.nodes = eigenvalues_sym_tridiagonal(j.diag, j.off);
  rule.weights.resize(order);
  rule.log_weights.resize(order);
  rule.vectors = Matrix(vector_rows, order);

  // Each eigenvector from a twisted factorization of J - e I, carried as
  // log-magnitude and sign: weights at large nodes underflow long before the
  // vector components they multiply stop mattering.
  const std::size_t m = order;
  double jnorm = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    jnorm = std::max(jnorm, std::abs(j.diag[i]) + (i > 0 ? std::abs(j.off[i - 1]) : 0.0) +
                                (i + 1 < m ? std::abs(j.off[i]) : 0.0));
  const double tiny = 1e-300 + std::numeric_limits<double>::epsilon() * jnorm;
  auto guard = [tiny](double d) { return std::abs(d) < tiny ? std::copysign(tiny, d) : d; };
  std::vector<double> dplus(m), dminus(m), logz(m), sgn(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double e = rule.nodes[k];
    dplus[0] = guard(j.diag[0] - e);
    for (std::size_t i = 1; i < m; ++i)
      dplus[i] = guard(j.diag[i] - e - j.off[i - 1] * j.off[i - 1] / dplus[i - 1]);
    dminus[m - 1] = guard(j.diag[m - 1] - e);
    for (std::size_t i = m - 1; i-- > 0;)
      dminus[i] = guard(j.diag[i] - e - j.off[i] * j.off[i] / dminus[i + 1]);
    std::size_t twist = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double gamma = std::abs(dplus[i] + dminus[i] - (j.diag[i] - e));
      if (gamma < best) {
        best = gamma;
        twist = i;
      }
    }
    logz[twist] = 0.0;
    sgn[twist] = 1.0;
    for (std::size_t i = twist; i-- > 0;) {
      const double f = -j.off[i] / dplus[i];
      logz[i] = logz[i + 1] + std::log(std::abs(f));
      sgn[i] = sgn[i + 1] * (f < 0.0 ? -1.0 : 1.0);
    }
    for (std::size_t i = twist + 1; i < m; ++i) {
      const double f = -j.off[i - 1] / dminus[i];
      logz[i] = logz[i - 1] + std::log(std::abs(f));
      sgn[i] = sgn[i - 1] * (f < 0.0 ? -1.0 : 1.0);
    }
    const double top = *std::max_element(logz.begin(), logz.end());
    double acc = 0.0;
    for (double lz : logz) acc += std::exp(2.0 * (lz - top));
    const double log_norm = top + 0.5 * std::log(acc);
    const double flip = sgn[0];
    rule.log_weights[k] = 2.0 * (logz[0] - log_norm);
    rule.weights[k] = std::exp(rule.log_weights[k]);
    for (std::size_t n = 0; n < vector_rows; ++n)
      rule.vectors(n, k) = flip * sgn[n] * std::exp(logz[n] - log_norm);
  }
  return rule;
}

double quadrature_integrate(const QuadratureRule& rule, const std::function<double(double)>& f,
                            QuadratureMode mode) {
  const std::vector<double> w =
      mode == QuadratureMode::with_weight ? rule.weights : rule.derivative_weights();
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.order(); ++k)
    if (w[k] != 0.0) sum += w[k] * f(rule.nodes[k]);
  return sum;
}

SymMatrix quadrature_matrix(const QuadratureRule& rule, const std::function<double(double)>& f,
                            std::size_t size) {
  if (size > rule.vectors.rows()) throw DomainError("quadrature_matrix: size exceeds available eigenvector rows");
  const std::size_t m = rule.order();
  std::vector<double> fv(m);
  for (std::size_t k = 0; k < m; ++k) fv[k] = f(rule.nodes[k]);
  Matrix scaled(size, m);
  for (std::size_t n = 0; n < size; ++n)
    for (std::size_t k = 0; k < m; ++k) scaled(n, k) = rule.vectors(n, k) * fv[k];
  SymMatrix out(size);
  for (std::size_t n = 0; n < size; ++n) {
    const auto a = scaled.row(n);
    for (std::size_t p = 0; p <= n; ++p) {
      const auto b = rule.vectors.row(p);
      double acc = 0.0;
      for (std::size_t k = 0; k < m; ++k) acc += a[k] * b[k];
      out.set(n, p, acc);
    }
  }
  return out;
}

std::string to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::zero: return "zero";
    case PotentialKind::exponential: return "exponential";
    case PotentialKind::gaussian: return "gaussian";
    case PotentialKind::poschl_teller_cosh: return "poschl-teller-cosh";
    case PotentialKind::tabulated: return "tabulated";
  }
  return "?";
}

PotentialKind potential_kind_from_string(const std::string& s) {
  if (s == "zero" || s == "none") return PotentialKind::zero;
  if (s == "exponential") return PotentialKind::exponential;
  if (s == "gaussian") return PotentialKind::gaussian;
  if (s == "poschl-teller-cosh" || s == "pöschl-teller-cosh") return PotentialKind::poschl_teller_cosh;
  if (s == "tabulated") return PotentialKind::tabulated;
  throw DomainError("unknown potential kind '" + s + "'");
}

PotentialModel PotentialModel::parametric(PotentialKind kind, double v0, double range) {
  if (kind == PotentialKind::tabulated) throw DomainError("PotentialModel: tabulated kind needs a table");
  if (!std::isfinite(v0)) throw DomainError("PotentialModel: strength must be finite");
  if (!(range > 0.0) || !std::isfinite(range)) throw DomainError("PotentialModel: range must be positive");
  PotentialModel m;
  m.kind_ = kind;
  m.v0_ = kind == PotentialKind::zero ? 0.0 : v0;
  m.range_ = range;
  return m;
}

PotentialModel PotentialModel::tabulated(std::vector<double> r, std::vector<double> u) {
  if (r.size() != u.size() || r.size() < 2) throw DomainError("PotentialModel: table needs >= 2 (r, U) pairs");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!std::isfinite(r[i]) || !std::isfinite(u[i])) throw DomainError("PotentialModel: table entries must be finite");
    if (r[i] < 0.0) throw DomainError("PotentialModel: table radii must be non-negative");
    if (i > 0 && !(r[i] > r[i - 1])) throw DomainError("PotentialModel: table radii must increase");
  }
  PotentialModel m;
  m.kind_ = PotentialKind::tabulated;
  m.r_ = std::move(r);
  m.u_ = std::move(u);
  return m;
}

PotentialModel PotentialModel::read_table(std::istream& in) {
  std::vector<double> r, u;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double a, b;
    if (!(ls >> a)) continue;
    if (!(ls >> b)) throw DomainError("potential table line " + std::to_string(lineno) + ": expected two columns");
    r.push_back(a);
    u.push_back(b);
  }
  return tabulated(std::move(r), std::move(u));
}

bool PotentialModel::is_zero() const noexcept {
  if (kind_ == PotentialKind::tabulated)
    return std::all_of(u_.begin(), u_.end(), [](double v) { return v == 0.0; });
  return v0_ == 0.0;
}

double PotentialModel::operator()(double r) const {
  switch (kind_) {
    case PotentialKind::zero: return 0.0;
    case PotentialKind::exponential: return v0_ * std::exp(-r / range_);
    case PotentialKind::gaussian: {
      const double s = r / range_;
      return v0_ * std::exp(-s * s);
    }
    case PotentialKind::poschl_teller_cosh: {
      const double s = r / range_;
      if (s > 350.0) return 0.0;
      const double c = std::cosh(s);
      return v0_ / (c * c);
    }
    case PotentialKind::tabulated: {
      if (r <= r_.front()) return u_.front();
      if (r >= r_.back()) return 0.0;
      const auto it = std::upper_bound(r_.begin(), r_.end(), r);
      const std::size_t i = static_cast<std::size_t>(it - r_.begin());
      const double t = (r - r_[i - 1]) / (r_[i] - r_[i - 1]);
      return (1.0 - t) * u_[i - 1] + t * u_[i];
    }
  }
  return 0.0;
}

std::function<double(double)> quadrature_integrand(const BasisSpec& basis, const PotentialModel& model,
                                                   double lambda_scale) {
  if (!(lambda_scale > 0.0)) throw DomainError("quadrature_integrand: lambda must be positive");
  if (basis.family() == BasisFamily::laguerre)
    return [model, lambda_scale](double x) { return x * x * model(x / lambda_scale); };
  return [model, lambda_scale](double y) { return y * model(std::sqrt(y) / lambda_scale); };
}

SymMatrix potential_matrix(const BasisSpec& basis, const PotentialModel& model, double lambda_scale,
                           std::size_t size, std::size_t quad_order) {
  if (size < 1) throw DomainError("potential_matrix: size must be >= 1");
  if (quad_order == 0) quad_order = size;
  if (quad_order < size) throw DomainError("potential_matrix: quadrature order below matrix size");
  if (model.is_zero()) return SymMatrix(size);
  const QuadratureRule rule = gauss_rule(basis.beta(), quad_order, size);
  return quadrature_matrix(rule, quadrature_integrand(basis, model, lambda_scale), size);
}

}  // namespace jmatrix
