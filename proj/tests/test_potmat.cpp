#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "jmatrix/errors.hpp"
#include "jmatrix/linalg.hpp"
#include "jmatrix/potmat.hpp"
#include "test_util.hpp"

using namespace jmatrix;

namespace {

// Normalized generalized Laguerre polynomial from its explicit finite sum.
double laguerre_normalized(int n, double beta, double x) {
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double lt = std::lgamma(n + beta + 1) - std::lgamma(n - i + 1) - std::lgamma(beta + i + 1) -
                      std::lgamma(i + 1);
    sum += (i % 2 ? -1.0 : 1.0) * std::exp(lt) * std::pow(x, i);
  }
  const double norm = 0.5 * (std::lgamma(n + 1) + std::lgamma(beta + 1) - std::lgamma(n + beta + 1));
  return std::exp(norm) * sum;
}

// Pochhammer (beta + 1)_d: the d-th moment of the normalized weight.
double moment(double beta, int d) {
  double m = 1.0;
  for (int i = 0; i < d; ++i) m *= beta + 1.0 + i;
  return m;
}

}  // namespace

TEST_CASE("jacobi_matrix: beta = 0, order 2") {
  const auto j = jacobi_matrix(0.0, 2);
  CHECK(j(0, 0) == 1.0);
  CHECK(j(1, 1) == 3.0);
  CHECK(j(0, 1) == -1.0);
  CHECK(j(1, 0) == -1.0);
  const auto v = eigenvalues_sym_tridiagonal(j.diag, j.off);
  CHECK(v[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-15));
  CHECK(v[1] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("jacobi_matrix: structure") {
  const auto j = jacobi_matrix(BasisSpec::laguerre(4.0), 7);
  for (std::size_t a = 0; a < 7; ++a)
    for (std::size_t b = 0; b < 7; ++b) {
      CHECK(j(a, b) == j(b, a));
      if (a > b + 1 || b > a + 1) CHECK(j(a, b) == 0.0);
    }
  CHECK_THROWS_AS(jacobi_matrix(0.0, 0), DomainError);
}

TEST_CASE("nodes_and_weights: two-point rule") {
  const auto rule = nodes_and_weights(jacobi_matrix(0.0, 2), 0.0);
  CHECK(rule.nodes[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-15));
  CHECK(rule.nodes[1] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-15));
  CHECK(rule.weights[0] == doctest::Approx((2.0 + std::sqrt(2.0)) / 4.0).epsilon(1e-14));
  CHECK(rule.weights[1] == doctest::Approx((2.0 - std::sqrt(2.0)) / 4.0).epsilon(1e-14));
  const auto w = weights_from_eigenvalues(jacobi_matrix(0.0, 2));
  CHECK(std::abs(w[0] - rule.weights[0]) < 1e-12);
  CHECK(std::abs(w[1] - rule.weights[1]) < 1e-12);
  const auto sub = jacobi_matrix(0.0, 2).without_first();
  CHECK(rule.nodes[0] < sub.diag[0]);
  CHECK(sub.diag[0] < rule.nodes[1]);
}

TEST_CASE("nodes_and_weights: product-formula weights, interlacing, positivity") {
  for (double beta : {0.0, 4.0, -0.5, 2.3}) {
    for (std::size_t n : {2u, 5u, 10u}) {
      const auto j = jacobi_matrix(beta, n);
      const auto rule = nodes_and_weights(j, beta);
      const auto w = weights_from_eigenvalues(j);
      double total = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        CHECK(std::abs(w[k] - rule.weights[k]) <= 1e-12 * std::max(1.0, rule.weights[k]) + 1e-13 * rule.weights[k]);
        CHECK(rule.weights[k] > 0.0);
        total += rule.weights[k];
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
      const auto t = j.without_first();
      const auto sub = eigenvalues_sym_tridiagonal(t.diag, t.off);
      for (std::size_t k = 0; k + 1 < n; ++k) {
        CHECK(rule.nodes[k] < sub[k]);
        CHECK(sub[k] < rule.nodes[k + 1]);
      }
    }
  }
}

TEST_CASE("quadrature_integrate: hand cases") {
  const auto r2 = nodes_and_weights(jacobi_matrix(0.0, 2), 0.0);
  const auto r3 = nodes_and_weights(jacobi_matrix(0.0, 3), 0.0);
  auto cube = [](double x) { return x * x * x; };
  auto quart = [](double x) { return x * x * x * x; };
  CHECK(quadrature_integrate(r2, cube) == doctest::Approx(6.0).epsilon(1e-13));
  CHECK(quadrature_integrate(r2, quart) == doctest::Approx(20.0).epsilon(1e-13));
  CHECK(quadrature_integrate(r3, quart) == doctest::Approx(24.0).epsilon(1e-13));
  CHECK(quadrature_integrate(r3, [](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("quadrature_integrate: exact through degree 2N-1, inexact at 2N") {
  for (double beta : {0.0, 4.0}) {
    for (std::size_t n : {2u, 5u, 10u}) {
      const auto rule = nodes_and_weights(jacobi_matrix(beta, n), beta);
      for (int d = 0; d <= static_cast<int>(2 * n); ++d) {
        const double q = quadrature_integrate(rule, [d](double x) { return std::pow(x, d); });
        const double rel = std::abs(q - moment(beta, d)) / moment(beta, d);
        CAPTURE(beta);
        CAPTURE(n);
        CAPTURE(d);
        if (d <= static_cast<int>(2 * n - 1)) {
          CHECK(rel < 1e-12);
        } else {
          // The defect at degree 2N is the squared norm of the monic N-th polynomial.
          double monic_norm2 = 1.0;
          for (std::size_t i = 0; i < n; ++i) monic_norm2 *= (i + 1.0) * (i + beta + 1.0);
          CHECK(rel > 1e-10);
          CHECK(moment(beta, d) - q == doctest::Approx(monic_norm2).epsilon(1e-8));
        }
      }
    }
  }
}

TEST_CASE("quadrature_integrate: derivative weights integrate without the weight") {
  // int_0^inf e^{-2x} dx = 1/2 via the beta = 0 rule
  const auto rule = nodes_and_weights(jacobi_matrix(0.0, 20), 0.0);
  const double v = quadrature_integrate(rule, [](double x) { return std::exp(-2.0 * x); },
                                        QuadratureMode::derivative_weight);
  CHECK(v == doctest::Approx(0.5).epsilon(1e-6));
  // polynomial times the full weight is exact
  const auto r4 = nodes_and_weights(jacobi_matrix(4.0, 6), 4.0);
  const double g = quadrature_integrate(
      r4, [&](double x) { return r4.density(x) * x * x; }, QuadratureMode::derivative_weight);
  CHECK(g == doctest::Approx(moment(4.0, 2)).epsilon(1e-12));
}

TEST_CASE("eigenvector matrix is orthogonal and encodes the polynomials") {
  for (double beta : {0.0, 4.0}) {
    const std::size_t n = 12;
    const auto rule = nodes_and_weights(jacobi_matrix(beta, n), beta);
    const Matrix g = rule.vectors * rule.vectors.transposed();
    CHECK((g - Matrix::identity(n)).max_abs() < 1e-10);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t p = 0; p < n; ++p) {
        const double from_vec = rule.vectors(p, k) / rule.vectors(0, k);
        const double direct = laguerre_normalized(static_cast<int>(p), beta, rule.nodes[k]);
        CHECK(from_vec == doctest::Approx(direct).epsilon(1e-8));
      }
    const SymMatrix id = quadrature_matrix(rule, [](double) { return 1.0; }, n);
    CHECK((id.dense() - Matrix::identity(n)).max_abs() < 1e-10);
  }
}

TEST_CASE("gauss_rule matches the eigenvector construction") {
  for (double beta : {0.0, 4.0}) {
    const std::size_t n = 80;
    const auto full = nodes_and_weights(jacobi_matrix(beta, n), beta);
    const auto fast = gauss_rule(beta, n, 30);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(fast.nodes[k] == doctest::Approx(full.nodes[k]).epsilon(1e-13));
      CHECK(std::abs(fast.weights[k] - full.weights[k]) <= 1e-9 * full.weights[k] + 1e-300);
      for (std::size_t p = 0; p < 30; ++p) CHECK(std::abs(fast.vectors(p, k) - full.vectors(p, k)) < 1e-10);
    }
  }
}

TEST_CASE("gauss_rule: large orders stay finite and orthonormal") {
  const auto rule = gauss_rule(4.0, 2000, 50);
  double total = 0.0;
  for (double w : rule.weights) total += w;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  for (std::size_t k = 0; k < rule.order(); ++k) CHECK(std::isfinite(rule.log_weights[k]));
  for (double v : rule.vectors.data()) CHECK(std::isfinite(v));
  const auto square = gauss_rule(0.5, 400, 400);
  const Matrix g = square.vectors * square.vectors.transposed();
  CHECK((g - Matrix::identity(400)).max_abs() < 1e-10);
}

TEST_CASE("potential models") {
  const auto e = PotentialModel::parametric(PotentialKind::exponential, -2.0, 0.5);
  CHECK(e(0.0) == -2.0);
  CHECK(e(1.0) == doctest::Approx(-2.0 * std::exp(-2.0)));
  const auto g = PotentialModel::parametric(PotentialKind::gaussian, 3.0, 2.0);
  CHECK(g(2.0) == doctest::Approx(3.0 * std::exp(-1.0)));
  const auto pt = PotentialModel::parametric(PotentialKind::poschl_teller_cosh, -1.5, 1.0);
  CHECK(pt(0.0) == -1.5);
  CHECK(pt(1.0) == doctest::Approx(-1.5 / std::pow(std::cosh(1.0), 2)));
  CHECK(pt(1e4) == 0.0);
  std::istringstream table("# r U\n0 -1\n1 -0.5  # mid\n\n2 0\n");
  const auto t = PotentialModel::read_table(table);
  CHECK(t(0.5) == doctest::Approx(-0.75));
  CHECK(t(5.0) == 0.0);
  CHECK(PotentialModel::zero().is_zero());
  CHECK(potential_kind_from_string("pöschl-teller-cosh") == PotentialKind::poschl_teller_cosh);
  CHECK_THROWS_AS(potential_kind_from_string("yukawa"), DomainError);
  CHECK_THROWS_AS(PotentialModel::parametric(PotentialKind::gaussian, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(PotentialModel::tabulated({0, 1, 1}, {0, 0, 0}), DomainError);
}

TEST_CASE("potential_matrix: zero potential and symmetry") {
  const auto basis = BasisSpec::laguerre(4.0);
  const SymMatrix z = potential_matrix(basis, PotentialModel::zero(), 1.0, 6);
  CHECK(z.dense().max_abs() == 0.0);
  const SymMatrix u =
      potential_matrix(basis, PotentialModel::parametric(PotentialKind::exponential, -2.0, 1.0), 1.0, 20);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j) CHECK(u(i, j) == u(j, i));
}

TEST_CASE("potential_matrix: exponential potential against adaptive integration") {
  const auto model = PotentialModel::parametric(PotentialKind::exponential, 1.0, 1.0);
  boost::math::quadrature::exp_sinh<double> integrator;
  for (auto basis : {BasisSpec::laguerre(4.0), BasisSpec::oscillator(4.0)}) {
    for (double lambda : {1.0, 2.5}) {
      const SymMatrix u = potential_matrix(basis, model, lambda, 4, 120);
      const double beta = basis.beta();
      for (int n = 0; n < 4; ++n)
        for (int m = 0; m <= n; ++m) {
          // <phi_n|U|phi_m> in x = lambda r, with the basis functions written out.
          auto integrand = [&](double x) {
            if (x <= 0.0 || x > 600.0) return 0.0;
            if (basis.family() == BasisFamily::laguerre) {
              const double w = std::exp(beta * std::log(x) - x - std::lgamma(beta + 1));
              return w * x * x * laguerre_normalized(n, beta, x) * laguerre_normalized(m, beta, x) *
                     model(x / lambda);
            }
            const double y = x * x;
            const double w = std::exp(beta * std::log(y) - y - std::lgamma(beta + 1));
            return 2.0 * x * w * y * laguerre_normalized(n, beta, y) * laguerre_normalized(m, beta, y) *
                   model(x / lambda);
          };
          const double want = integrator.integrate(integrand, 1e-13);
          CAPTURE(n);
          CAPTURE(m);
          CHECK(std::abs(u(n, m) - want) < 1e-6);
        }
    }
  }
}
