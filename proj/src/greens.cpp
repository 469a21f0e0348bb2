#include "jmatrix/greens.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "jmatrix/errors.hpp"

namespace jmatrix {

// det(H~ - z Omega~) as const * prod(values - z), or for a singular Omega~ as
// const * prod(1 - (z - shift) values) with const = det(H~ - shift Omega~).
struct FiniteGreen::SubSpectrum {
  bool vanishes = false;
  bool shifted = false;
  double shift = 0.0;
  std::vector<std::complex<double>> constant_factors;
  std::vector<std::complex<double>> values;
};

struct FiniteGreen::Cache {
  std::mutex mutex;
  std::map<std::pair<std::size_t, std::size_t>, SubSpectrum> entries;
};

namespace {

bool by_real_part(const std::complex<double>& a, const std::complex<double>& b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

std::vector<std::complex<double>> sorted_eigenvalues(const Matrix& a) {
  auto ev = eigenvalues_general(a);
  std::sort(ev.begin(), ev.end(), by_real_part);
  return ev;
}

// Columns of lu^{-1} b.
Matrix solve_columns(const LuDecomposition& lu, const Matrix& b) {
  const std::size_t n = b.rows();
  Matrix out(n, b.cols());
  std::vector<double> col(n);
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
    const auto x = lu.solve(col);
    for (std::size_t i = 0; i < n; ++i) out(i, j) = x[i];
  }
  return out;
}

}  // namespace

FiniteGreen::FiniteGreen(SymMatrix h)
    : h_(std::move(h)), omega_(SymMatrix::identity(h_.order())), orthogonal_(true), cache_(std::make_shared<Cache>()) {
  auto d = eig_sym_dense(h_);
  eig_.values = d.values;
  eig_.eta = d.values;
  eig_.tau.assign(d.values.size(), 1.0);
  eig_.vectors = std::move(d.vectors);
  scale_ = h_.dense().max_abs();
  omega_spectrum_.assign(h_.order(), 1.0);
}

FiniteGreen::FiniteGreen(SymMatrix h, SymMatrix omega) : FiniteGreen(std::move(h), std::move(omega), 0) {}

FiniteGreen::FiniteGreen(SymMatrix h, SymMatrix omega, std::size_t trailing_rows)
    : h_(std::move(h)), omega_(std::move(omega)), cache_(std::make_shared<Cache>()) {
  if (h_.order() != omega_.order()) throw DomainError("FiniteGreen: H and Omega differ in order");
  eig_ = trailing_rows == 0 ? eig_sym_generalized(h_, omega_) : eig_sym_generalized(h_, omega_, trailing_rows);
  scale_ = h_.dense().max_abs();
  omega_spectrum_ = eigenvalues_sym(omega_);
}

void FiniteGreen::check_pole(double z) const {
  for (double e : eig_.values)
    if (std::abs(z - e) <= 1e-12 * std::max(1.0, std::abs(e)))
      throw PoleError("FiniteGreen: z = " + std::to_string(z) + " hits the eigenvalue " + std::to_string(e));
}

const FiniteGreen::SubSpectrum& FiniteGreen::sub_spectrum(std::size_t n, std::size_t m) const {
  const auto key = std::make_pair(std::min(n, m), std::max(n, m));
  std::lock_guard<std::mutex> lock(cache_->mutex);
  if (auto it = cache_->entries.find(key); it != cache_->entries.end()) return it->second;

  SubSpectrum sub;
  const Matrix h_sub = h_.dense().without(key.first, key.second);
  const Matrix o_sub = omega_.dense().without(key.first, key.second);
  const std::size_t k = h_sub.rows();
  if (k == 0) {
    // 1x1 pencil: the cofactor is 1.
  } else if (orthogonal_ && n == m) {
    sub.values = sorted_eigenvalues(h_sub);
  } else {
    std::optional<LuDecomposition> lu;
    try {
      lu.emplace(o_sub);
    } catch (const SingularMatrixError&) {
    }
    if (lu) {
      sub.constant_factors = sorted_eigenvalues(o_sub);
      sub.values = sorted_eigenvalues(solve_columns(*lu, h_sub));
    } else {
      // Overlap block is singular: expand around a shift where the pencil is regular.
      sub.shifted = true;
      sub.vanishes = true;
      const double base = std::max(scale_, 1.0);
      for (double t : {0.0, 0.3183098861837907, -0.7071067811865476, 1.4142135623730951, -2.718281828459045}) {
        const double s = t * base;
        Matrix a = h_sub;
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) a(i, j) -= s * o_sub(i, j);
        try {
          LuDecomposition alu(a);
          sub.constant_factors = {alu.determinant()};
          sub.values = sorted_eigenvalues(solve_columns(alu, o_sub));
          sub.shift = s;
          sub.vanishes = false;
          break;
        } catch (const SingularMatrixError&) {
        }
      }
    }
  }
  return cache_->entries.emplace(key, std::move(sub)).first->second;
}

namespace {

// (-1)^{n+m} const * P~(z) / (det Omega * prod_{j != skip} (e_j - z)), interleaving
// factors so partial products stay near unity.
double cofactor_ratio(const std::vector<double>& spectrum, const std::vector<double>& omega_spectrum,
                      const std::vector<std::complex<double>>& constant_factors,
                      const std::vector<std::complex<double>>& values, bool shifted, double shift, double z,
                      std::size_t skip, int sign) {
  std::vector<std::complex<double>> num;
  num.reserve(constant_factors.size() + values.size());
  for (const auto& c : constant_factors) num.push_back(c);
  for (const auto& v : values) num.push_back(shifted ? 1.0 - (z - shift) * v : v - z);
  std::vector<double> den;
  den.reserve(spectrum.size() + omega_spectrum.size());
  for (double w : omega_spectrum) den.push_back(w);
  for (std::size_t j = 0; j < spectrum.size(); ++j)
    if (j != skip) den.push_back(spectrum[j] - z);

  std::complex<double> acc = static_cast<double>(sign);
  const std::size_t len = std::max(num.size(), den.size());
  for (std::size_t i = 0; i < len; ++i) {
    if (i < num.size()) acc *= num[i];
    if (i < den.size()) acc /= den[i];
  }
  return acc.real();
}

}  // namespace

double green_element(const FiniteGreen& fg, std::size_t n, std::size_t m, double z) {
  const auto& e = fg.eig_;
  if (n >= fg.order() || m >= fg.order()) throw DomainError("green_element: index out of range");
  if (n < e.first_row || m < e.first_row) throw DomainError("green_element: eigenvector row not held");
  fg.check_pole(z);
  double sum = 0.0;
  for (std::size_t i = 0; i < e.order(); ++i) sum += e.vector(n, i) * e.vector(m, i) / (e.eta[i] - z * e.tau[i]);
  return sum;
}

double green_element_eigenvalue_only(const FiniteGreen& fg, std::size_t n, std::size_t m, double z) {
  if (n >= fg.order() || m >= fg.order()) throw DomainError("green_element_eigenvalue_only: index out of range");
  fg.check_pole(z);
  const auto& sub = fg.sub_spectrum(n, m);
  if (sub.vanishes) return 0.0;
  const int sign = (n + m) % 2 ? -1 : 1;
  return cofactor_ratio(fg.eig_.values, fg.omega_spectrum_, sub.constant_factors, sub.values, sub.shifted,
                        sub.shift, z, fg.order(), sign);
}

double eigenvector_products(const FiniteGreen& fg, std::size_t n, std::size_t m, std::size_t k) {
  const auto& ev = fg.eig_.values;
  if (n >= fg.order() || m >= fg.order() || k >= fg.order())
    throw DomainError("eigenvector_products: index out of range");
  for (std::size_t j = 0; j < ev.size(); ++j)
    if (j != k && std::abs(ev[j] - ev[k]) < 1e-10 * fg.scale_)
      throw DegenerateEigenvalueError("eigenvector_products: eigenvalues " + std::to_string(j) + " and " +
                                      std::to_string(k) + " coincide");
  const auto& sub = fg.sub_spectrum(n, m);
  if (sub.vanishes) return 0.0;
  const int sign = (n + m) % 2 ? -1 : 1;
  return fg.eig_.tau[k] * cofactor_ratio(ev, fg.omega_spectrum_, sub.constant_factors, sub.values, sub.shifted,
                                         sub.shift, ev[k], k, sign);
}

}  // namespace jmatrix
