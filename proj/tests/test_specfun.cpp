#include <cmath>
#include <numbers>

#include "doctest.h"
#include "jmatrix/errors.hpp"
#include "jmatrix/specfun.hpp"
#include "test_util.hpp"

using namespace jmatrix;
using testutil::rel_err;
using testutil::uniform;
using std::numbers::pi;

// Reference values below were produced independently with mpmath at 40 digits.

TEST_CASE("ln_gamma: classical values") {
  CHECK(std::abs(ln_gamma(1.0)) < 1e-15);
  CHECK(std::abs(ln_gamma(2.0)) < 1e-15);
  CHECK(rel_err(ln_gamma(0.5), cplx(0.5 * std::log(pi), 0.0)) < 1e-14);
  CHECK(rel_err(ln_gamma(11.0), cplx(std::log(3628800.0), 0.0)) < 1e-15);
}

TEST_CASE("ln_gamma: |Gamma(1+3i)| from the reflection-type identity") {
  const double nu = 3.0;
  const double expected = std::sqrt(pi * nu / std::sinh(pi * nu));
  CHECK(std::abs(std::exp(ln_gamma({1.0, nu}))) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(expected == doctest::Approx(0.039001).epsilon(1e-4));
}

TEST_CASE("ln_gamma: continuous branch matches mpmath loggamma") {
  CHECK(rel_err(ln_gamma({1.0, 3.0}), {-3.2441442995897561916, 1.0533507710686132003}) < 1e-14);
  CHECK(rel_err(ln_gamma({0.5, 2.0}), {-2.2226558640532582191, -0.59253698197703458893}) < 1e-14);
  CHECK(rel_err(ln_gamma({-2.5, 0.5}), {-0.93508562129827747868, -8.8709628852474591986}) < 1e-13);
  CHECK(rel_err(ln_gamma({30.0, -40.0}), {49.232808494070298819, -143.83479582266482462}) < 1e-14);
}

TEST_CASE("ln_gamma: poles") {
  CHECK_THROWS_AS(ln_gamma(0.0), PoleError);
  CHECK_THROWS_AS(ln_gamma(-3.0), PoleError);
  CHECK(reciprocal_gamma(-2.0) == cplx(0.0));
  CHECK(std::abs(reciprocal_gamma(3.0) - 0.5) < 1e-15);
}

TEST_CASE("ln_gamma: |Gamma(1 + i nu)|^2 sinh(pi nu) = pi nu") {
  for (double nu : {0.5, 1.0, 3.0, 5.0}) {
    const double g2 = std::exp(2.0 * ln_gamma({1.0, nu}).real());
    CHECK(rel_err(g2 * std::sinh(pi * nu), pi * nu) < 1e-10);
  }
}

TEST_CASE("bessel_imag_order: matches extended-precision series values") {
  struct Case {
    double nu, y;
    cplx want;
  };
  const Case cases[] = {
      {3.0, 0.1, {-20.936351873973139004, 14.789793463865948189}},
      {3.0, 2.5, {22.495750525734519104, 1.5956948572179434967}},
      {3.0, 10.0, {-10.794280781924754751, 8.5014621541687775411}},
      {3.0, 30.0, {-5.7138148731818304265, -5.7234017986991641402}},
      {3.0, 50.0, {2.6014439349897481527, -5.7095913514803010222}},
      {0.5, 7.0, {0.39633016382599108491, -0.027109433710722980743}},
      {1.0, 100.0, {0.049177175258745070868, -0.17798553486903664259}},
      {8.0, 45.0, {15012.186974574902281, -7806.8440735754990621}},
  };
  for (const auto& c : cases) {
    CAPTURE(c.nu);
    CAPTURE(c.y);
    CHECK(rel_err(bessel_j_imag_order(Sign::plus, c.nu, c.y), c.want) < 1e-12);
  }
}

TEST_CASE("bessel_imag_order: continuity in the order toward J_0") {
  const cplx j = bessel_j_imag_order(Sign::plus, 1e-9, 1.0);
  CHECK(j.real() == doctest::Approx(0.76519768655796655145).epsilon(1e-8));
  CHECK(std::abs(j.imag()) < 1e-8);
}

TEST_CASE("bessel_imag_order: J_{-i nu} is the conjugate of J_{i nu}") {
  const cplx p = bessel_j_imag_order(Sign::plus, 3.0, 2.5);
  const cplx m = bessel_j_imag_order(Sign::minus, 3.0, 2.5);
  CHECK(m == std::conj(p));
}

TEST_CASE("bessel_imag_order: series and asymptotic branches agree around the switch") {
  for (double nu : {0.5, 1.0, 3.0, 5.0, 10.0}) {
    const double ys = bessel_switch_point(nu);
    for (double f : {0.9, 1.0, 1.1, 1.3}) {
      const double y = f * ys;
      const cplx jhat = detail::bessel_series_scaled(nu, y);
      const double c1 = 2.0 / (-std::expm1(-2.0 * pi * nu));
      const cplx from_series = c1 * jhat - c1 * std::exp(-pi * nu) * std::conj(jhat);
      const cplx from_asym = detail::normalized_hankel_plus_asymptotic(nu, y);
      CAPTURE(nu);
      CAPTURE(y);
      CHECK(rel_err(from_series, from_asym) < 1e-10);
    }
  }
}

TEST_CASE("bessel_imag_order: domain checks") {
  CHECK_THROWS_AS(bessel_j_imag_order(Sign::plus, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_j_imag_order(Sign::plus, 1.0, -1.0), DomainError);
  AccuracyBudget tiny;
  tiny.max_terms = 3;
  CHECK_THROWS_AS(detail::bessel_series_scaled(3.0, 10.0, tiny), ConvergenceError);
}

TEST_CASE("hankel_imag_order: large-argument amplitude") {
  const double nu = 3.0, y = 200.0;
  for (Sign s : {Sign::plus, Sign::minus}) {
    const cplx a = std::sqrt(y) * normalized_hankel(s, nu, y);
    CHECK(rel_err(std::abs(a), std::sqrt(2.0 / pi)) < 1e-2);
  }
}

TEST_CASE("hankel_imag_order: leading asymptotic form with first correction") {
  // The bare leading term misses a phase of (4 nu^2 + 1) / (8 y), about 0.023 here.
  const double nu = 3.0, y = 200.0;
  const double c1 = (4.0 * nu * nu + 1.0) / (8.0 * y);
  for (Sign s : {Sign::plus, Sign::minus}) {
    const double sg = to_int(s);
    const cplx lead = std::sqrt(2.0 / pi) * std::exp(sg * 0.5 * pi * nu) *
                      std::exp(cplx(0.0, sg * (y - 0.25 * pi)));
    const cplx got = std::sqrt(y) * hankel_imag_order(s, nu, y);
    CHECK(rel_err(got, lead) == doctest::Approx(c1).epsilon(2e-2));
    CHECK(rel_err(got, lead * cplx(1.0, -sg * c1)) < 1e-3);
  }
}

TEST_CASE("hankel_imag_order: amplitude error decays like 1/y^2") {
  double worst = 0.0;
  for (double y = 50.0; y <= 400.0; y *= 1.25) {
    const double amp = std::abs(std::sqrt(y) * normalized_hankel(Sign::plus, 3.0, y));
    worst = std::max(worst, rel_err(amp, std::sqrt(2.0 / pi)) * y * y);
  }
  CHECK(worst < 20.0);
}

TEST_CASE("hankel_imag_order: conjugation and H+ + H- = 2J") {
  for (double y : {0.7, 12.0, 60.0}) {
    const double nu = 3.0;
    const cplx ap = normalized_hankel(Sign::plus, nu, y);
    const cplx am = normalized_hankel(Sign::minus, nu, y);
    CHECK(am == std::conj(ap));
    const cplx hp = hankel_imag_order(Sign::plus, nu, y);
    const cplx hm = hankel_imag_order(Sign::minus, nu, y);
    const cplx j = bessel_j_imag_order(Sign::plus, nu, y);
    CHECK(rel_err(hp + hm, 2.0 * j) < 1e-11);
  }
}

TEST_CASE("hankel_imag_order: naive and log-space scaling agree where both fit") {
  for (double y : {0.4, 5.0, 80.0}) {
    for (Sign s : {Sign::plus, Sign::minus}) {
      const cplx a = hankel_imag_order(s, 2.0, y, {}, HankelScaling::log_space);
      const cplx b = hankel_imag_order(s, 2.0, y, {}, HankelScaling::naive);
      CHECK(rel_err(b, a) < 1e-10);
    }
  }
}

TEST_CASE("hankel_imag_order: naive evaluation overflows for large order") {
  const double nu = 300.0, y = 1e6;
  CHECK_THROWS_AS(hankel_imag_order(Sign::plus, nu, y, {}, HankelScaling::naive), OverflowError);
  const cplx h = hankel_imag_order(Sign::plus, nu, y);
  CHECK(std::isfinite(h.real()));
  const cplx a = normalized_hankel(Sign::plus, nu, y);
  CHECK(std::abs(std::sqrt(y) * a) == doctest::Approx(std::sqrt(2.0 / pi)).epsilon(1e-3));
}

TEST_CASE("chi_reference: amplitude, symmetry and reference values") {
  const auto p = PhysicalParams::from_mu_nu(2.0, 3.0);  // lambda = 1, k = 2
  const cplx far = chi_reference(Sign::plus, p, 2000.0);
  CHECK(std::abs(far) == doctest::Approx(std::sqrt(2.0 / pi)).epsilon(1e-4));
  for (double r : {0.05, 1.0, 9.0}) {
    const cplx cp = chi_reference(Sign::plus, p, r);
    const cplx cm = chi_reference(Sign::minus, p, r);
    CHECK(cm.real() == cp.real());
    CHECK(cm.imag() == -cp.imag());
  }
  // lambda r = 10 at mu = 2 is y = 20.
  CHECK(rel_err(chi_reference(Sign::plus, p, 10.0),
                {0.78618634015767334385, 0.10639758701241002306}) < 1e-12);
  CHECK(rel_err(chi_reference(Sign::plus, p, 0.15),
                {0.22614161272378192765, -0.11059235906529003123}) < 1e-12);
}

TEST_CASE("hyp2f1: trivial and closed-form cases") {
  CHECK(hyp2f1({0.3, 1.0}, {2.0, -1.0}, {1.5, 0.2}, 0.0) == cplx(1.0));
  CHECK(hyp2f1({0.3, 1.0}, 0.0, {1.5, 0.2}, 0.7) == cplx(1.0));
  CHECK(rel_err(hyp2f1(1.0, 1.0, 2.0, 0.5), cplx(2.0 * std::log(2.0))) < 1e-13);
  // -ln(1-z)/z near z = 1 goes through the connection formula branch
  CHECK(rel_err(hyp2f1(1.0, 1.0, 2.0, 0.99), cplx(-std::log(0.01) / 0.99)) < 1e-12);
}

TEST_CASE("hyp2f1: complex parameters") {
  CHECK(rel_err(hyp2f1({1.2, -0.3}, {2.1, 0.7}, {3.3, 1.0}, 0.6),
                {1.8776054352035741478, -0.30767390677820106748}) < 1e-12);
  CHECK(rel_err(hyp2f1({0.5, 1.5}, {-1.25, -1.5}, {1.0, 3.0}, 0.97),
                {0.3682813756282874297, -0.33445514581098007978}) < 1e-11);
  CHECK(rel_err(hyp2f1(2.0, 3.0, 4.5, 0.995), cplx(115.62101350260372622)) < 1e-11);
}

TEST_CASE("hyp2f1: connection formula agrees with raw series just above the switch") {
  const cplx a{0.5, 1.5}, b{-1.25, -1.5}, c{1.0, 3.0};
  const double z = 0.93;
  CHECK(rel_err(hyp2f1(a, b, c, z), detail::hyp2f1_series(a, b, c, z)) < 1e-11);
}

TEST_CASE("hyp2f1: errors") {
  CHECK_THROWS_AS(hyp2f1(1.0, 1.0, -2.0, 0.3), PoleError);
  CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 2.0, 1.0), DomainError);
  AccuracyBudget tiny;
  tiny.max_terms = 5;
  CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 2.0, 0.8, tiny), ConvergenceError);
}

TEST_CASE("hyp2f1: Euler transformation over random parameters") {
  for (int trial = 0; trial < 200; ++trial) {
    const cplx a{uniform(-10, 10), uniform(-10, 10)};
    const cplx b{uniform(-10, 10), uniform(-10, 10)};
    const cplx c{uniform(1, 10), uniform(-10, 10)};
    const double z = uniform(0.0, 0.6);
    const cplx lhs = hyp2f1(a, b, c, z);
    const cplx rhs = std::pow(cplx(1.0 - z), c - a - b) * hyp2f1(c - a, c - b, c, z);
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(c);
    CAPTURE(z);
    CHECK(rel_err(lhs, rhs) < 1e-8);
  }
}

TEST_CASE("hyp1f1: trivial, closed form and reference values") {
  CHECK(hyp1f1({0.5, 3.0}, {1.0, 3.0}, 0.0) == cplx(1.0));
  CHECK(rel_err(hyp1f1(1.0, 1.0, 1.7), cplx(std::exp(1.7))) < 1e-14);
  CHECK(rel_err(hyp1f1({0.5, 3.0}, {1.0, 3.0}, 2.0),
                {6.3352207663694432487, 1.5361721437386046572}) < 1e-13);
  CHECK(rel_err(hyp1f1({-1.5, 1.5}, {1.0, 3.0}, 2.0),
                {1.1972842645406100147, 1.8397722625528161988}) < 1e-13);
  CHECK(rel_err(hyp1f1({0.5, 3.0}, {1.0, 3.0}, -2.0),
                {0.12851984229353789331, -0.053385526756975852414}) < 1e-12);
}

TEST_CASE("hyp1f1: Kummer identity residual") {
  const cplx a{0.5, 3.0}, c{1.0, 3.0};
  const double z = 2.0;
  const cplx lhs = detail::hyp1f1_series(a, c, -z);
  const cplx rhs = std::exp(-z) * detail::hyp1f1_series(c - a, c, z);
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("hyp1f1: Kummer identity over random parameters") {
  for (int trial = 0; trial < 200; ++trial) {
    const cplx a{uniform(-10, 10), uniform(-10, 10)};
    const cplx c{uniform(1, 10), uniform(-10, 10)};
    const double z = uniform(0.0, 5.0);
    const cplx lhs = detail::hyp1f1_series(a, c, -z);
    const cplx rhs = std::exp(-z) * detail::hyp1f1_series(c - a, c, z);
    CAPTURE(a);
    CAPTURE(c);
    CAPTURE(z);
    CHECK(rel_err(lhs, rhs) < 1e-8);
  }
}

TEST_CASE("assoc_legendre_p: Legendre polynomial limits") {
  for (double x : {0.0, 0.3, 0.77, 1.0}) {
    CHECK(std::abs(assoc_legendre_p(0.0, 0.0, x) - 1.0) < 1e-15);
    CHECK(std::abs(assoc_legendre_p(0.0, 1.0, x) - x) < 1e-13);
    CHECK(std::abs(assoc_legendre_p(0.0, 2.0, x) - 0.5 * (3 * x * x - 1)) < 1e-13);
  }
}

TEST_CASE("assoc_legendre_p: conjugation symmetry and reference values") {
  const double x = 1.0 / std::sqrt(17.0);
  const cplx pm = assoc_legendre_p({0.0, -3.0}, 1.5, x);
  const cplx pp = assoc_legendre_p({0.0, 3.0}, 1.5, x);
  CHECK(rel_err(pp, std::conj(pm)) < 1e-14);
  CHECK(rel_err(pm, {5.0903482574363245441, -22.982007976985104534}) < 1e-12);
  CHECK(rel_err(assoc_legendre_p({0.0, -3.0}, 2.5, x),
                {14.879882246281091568, -15.831275042945832908}) < 1e-12);
}

TEST_CASE("assoc_legendre_p: errors") {
  CHECK_THROWS_AS(assoc_legendre_p(1.0, 0.5, 0.3), PoleError);
  CHECK_THROWS_AS(assoc_legendre_p(0.0, 0.5, 1.3), DomainError);
  CHECK_THROWS_AS(assoc_legendre_p({0.0, 1.0}, 0.5, 1.0), DomainError);
}

TEST_CASE("accuracy budget validation") {
  AccuracyBudget b;
  b.target_rel_err = 0.0;
  CHECK_THROWS_AS(b.validate(), DomainError);
  b = {};
  b.max_terms = 0;
  CHECK_THROWS_AS(b.validate(), DomainError);
}
