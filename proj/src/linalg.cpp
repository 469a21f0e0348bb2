#include "jmatrix/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "jmatrix/errors.hpp"

namespace jmatrix {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Householder reduction of a symmetric matrix to tridiagonal form, A = Q T Q^T.
// Reflector k acts on indices k+1..n-1 and is stored as (u_k, beta_k) with
// P_k = I - beta_k u u^T.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
  std::vector<std::vector<double>> u;
  std::vector<double> beta;

  // Rows `rows` of Q, one row per entry.
  Matrix q_rows(std::span<const std::size_t> rows) const {
    const std::size_t n = diag.size();
    Matrix q(rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      auto v = q.row(r);
      v[rows[r]] = 1.0;
      for (std::size_t k = 0; k < u.size(); ++k) {
        if (beta[k] == 0.0) continue;
        const auto& uk = u[k];
        double dot = 0.0;
        for (std::size_t i = 0; i < uk.size(); ++i) dot += v[k + 1 + i] * uk[i];
        dot *= beta[k];
        for (std::size_t i = 0; i < uk.size(); ++i) v[k + 1 + i] -= dot * uk[i];
      }
    }
    return q;
  }
};

Tridiagonal tridiagonalize(const SymMatrix& s) {
  const std::size_t n = s.order();
  Matrix a = s.dense();
  Tridiagonal t;
  t.diag.resize(n);
  t.off.assign(n > 0 ? n - 1 : 0, 0.0);
  std::vector<double> p(n), w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    std::vector<double> u(m);
    double scale = 0.0;
    for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::abs(a(k + 1 + i, k)));
    double beta = 0.0;
    if (scale == 0.0) {
      t.off[k] = 0.0;
    } else {
      double norm2 = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        u[i] = a(k + 1 + i, k) / scale;
        norm2 += u[i] * u[i];
      }
      const double alpha = -std::copysign(std::sqrt(norm2), u[0]);
      u[0] -= alpha;
      const double unorm2 = norm2 - 2.0 * alpha * (u[0] + alpha) + alpha * alpha;
      beta = unorm2 > 0.0 ? 2.0 / unorm2 : 0.0;
      t.off[k] = alpha * scale;
      if (beta != 0.0) {
        // p = beta A u, w = p - (beta/2)(p.u) u, A -= u w^T + w u^T
        for (std::size_t i = 0; i < m; ++i) {
          double acc = 0.0;
          const auto row = a.row(k + 1 + i);
          for (std::size_t j = 0; j < m; ++j) acc += row[k + 1 + j] * u[j];
          p[i] = beta * acc;
        }
        double pu = 0.0;
        for (std::size_t i = 0; i < m; ++i) pu += p[i] * u[i];
        const double half = 0.5 * beta * pu;
        for (std::size_t i = 0; i < m; ++i) w[i] = p[i] - half * u[i];
        for (std::size_t i = 0; i < m; ++i) {
          auto row = a.row(k + 1 + i);
          for (std::size_t j = 0; j < m; ++j) row[k + 1 + j] -= u[i] * w[j] + w[i] * u[j];
        }
      }
    }
    t.diag[k] = a(k, k);
    t.u.push_back(std::move(u));
    t.beta.push_back(beta);
  }
  if (n >= 2) {
    t.diag[n - 2] = a(n - 2, n - 2);
    t.off[n - 2] = a(n - 1, n - 2);
  }
  if (n >= 1) t.diag[n - 1] = a(n - 1, n - 1);
  return t;
}

// Implicit-shift QL on a symmetric tridiagonal matrix. Rotations are applied to
// the columns of `z` (any number of rows, possibly zero).
void tridiagonal_ql(std::vector<double>& d, std::vector<double> e, Matrix& z) {
  const int n = static_cast<int>(d.size());
  e.resize(d.size(), 0.0);
  if (n > 0) e[n - 1] = 0.0;
  const std::size_t nrows = z.rows();
  const int max_iter = 60;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd) break;
      }
      if (m != l) {
        if (iter++ == max_iter) throw ConvergenceError("tridiagonal eigensolver: iteration limit reached");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (std::size_t k = 0; k < nrows; ++k) {
            f = z(k, i + 1);
            z(k, i + 1) = s * z(k, i) + c * f;
            z(k, i) = c * z(k, i) - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

std::vector<std::size_t> ascending_order(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  return idx;
}

// Reorders eigenpairs ascending.
void sort_pairs(std::vector<double>& values, Matrix& vectors) {
  const auto idx = ascending_order(values);
  std::vector<double> sorted(values.size());
  Matrix vs(vectors.rows(), vectors.cols());
  for (std::size_t j = 0; j < idx.size(); ++j) {
    sorted[j] = values[idx[j]];
    for (std::size_t r = 0; r < vectors.rows(); ++r) vs(r, j) = vectors(r, idx[j]);
  }
  values = std::move(sorted);
  vectors = std::move(vs);
}

void fix_signs(Matrix& v) {
  for (std::size_t j = 0; j < v.cols(); ++j) {
    std::size_t big = 0;
    for (std::size_t r = 1; r < v.rows(); ++r)
      if (std::abs(v(r, j)) > std::abs(v(big, j))) big = r;
    if (v.rows() > 0 && v(big, j) < 0.0)
      for (std::size_t r = 0; r < v.rows(); ++r) v(r, j) = -v(r, j);
  }
}

std::vector<std::size_t> all_rows(std::size_t n) {
  std::vector<std::size_t> r(n);
  std::iota(r.begin(), r.end(), std::size_t{0});
  return r;
}

EigenDecomposition dense_eigen(const SymMatrix& a, std::span<const std::size_t> rows) {
  Tridiagonal t = tridiagonalize(a);
  Matrix z = t.q_rows(rows);
  tridiagonal_ql(t.diag, t.off, z);
  sort_pairs(t.diag, z);
  return {std::move(t.diag), std::move(z)};
}

// Solves L^T X = Y in place for the trailing rows of X, using only the
// trailing block of L.
void back_substitute_transposed(const Matrix& l, Matrix& y, std::size_t first_row) {
  const std::size_t n = l.rows();
  for (std::size_t rr = n; rr-- > first_row;) {
    auto yr = y.row(rr - first_row);
    for (std::size_t j = rr + 1; j < n; ++j) {
      const double lji = l(j, rr);
      if (lji == 0.0) continue;
      const auto yj = y.row(j - first_row);
      for (std::size_t c = 0; c < yr.size(); ++c) yr[c] -= lji * yj[c];
    }
    const double inv = 1.0 / l(rr, rr);
    for (double& v : yr) v *= inv;
  }
}

GeneralizedDecomposition generalized(const SymMatrix& h, const SymMatrix& omega, std::size_t first_row) {
  const std::size_t n = h.order();
  if (omega.order() != n) throw DomainError("eig_sym_generalized: H and Omega differ in order");
  const Matrix l = cholesky(omega);

  // C = L^{-1} H L^{-T}: X = L^{-1} H, then C = L^{-1} X^T.
  Matrix x = h.dense();
  auto forward = [&](Matrix& m) {
    for (std::size_t i = 0; i < n; ++i) {
      auto mi = m.row(i);
      for (std::size_t k = 0; k < i; ++k) {
        const double lik = l(i, k);
        if (lik == 0.0) continue;
        const auto mk = m.row(k);
        for (std::size_t c = 0; c < n; ++c) mi[c] -= lik * mk[c];
      }
      const double inv = 1.0 / l(i, i);
      for (double& v : mi) v *= inv;
    }
  };
  forward(x);
  Matrix c = x.transposed();
  forward(c);
  const SymMatrix cs = SymMatrix::symmetrized(c);

  std::vector<std::size_t> rows(n - first_row);
  std::iota(rows.begin(), rows.end(), first_row);
  EigenDecomposition ed = dense_eigen(cs, rows);

  GeneralizedDecomposition g;
  g.first_row = first_row;
  g.values = std::move(ed.values);
  g.vectors = std::move(ed.vectors);
  back_substitute_transposed(l, g.vectors, first_row);
  g.tau.assign(n, 1.0);
  if (first_row == 0) {
    for (std::size_t i = 0; i < n; ++i) {
      double norm2 = 0.0;
      for (std::size_t r = 0; r < n; ++r) norm2 += g.vectors(r, i) * g.vectors(r, i);
      const double inv = 1.0 / std::sqrt(norm2);
      for (std::size_t r = 0; r < n; ++r) g.vectors(r, i) *= inv;
      g.tau[i] = 1.0 / norm2;
    }
    fix_signs(g.vectors);
  }
  g.eta.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.eta[i] = g.values[i] * g.tau[i];
  return g;
}

}  // namespace

EigenDecomposition eig_sym_tridiagonal(std::span<const double> diag, std::span<const double> offdiag) {
  const std::size_t n = diag.size();
  if (offdiag.size() + 1 != n && !(n == 0 && offdiag.empty()))
    throw DomainError("eig_sym_tridiagonal: off-diagonal length must be order - 1");
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(offdiag.begin(), offdiag.end());
  Matrix z = Matrix::identity(n);
  tridiagonal_ql(d, e, z);
  sort_pairs(d, z);
  fix_signs(z);
  return {std::move(d), std::move(z)};
}

std::vector<double> eigenvalues_sym_tridiagonal(std::span<const double> diag, std::span<const double> offdiag) {
  if (offdiag.size() + 1 != diag.size() && !(diag.empty() && offdiag.empty()))
    throw DomainError("eigenvalues_sym_tridiagonal: off-diagonal length must be order - 1");
  std::vector<double> d(diag.begin(), diag.end());
  Matrix none(0, d.size());
  tridiagonal_ql(d, std::vector<double>(offdiag.begin(), offdiag.end()), none);
  std::sort(d.begin(), d.end());
  return d;
}

EigenDecomposition eig_sym_dense(const SymMatrix& a) {
  EigenDecomposition ed = dense_eigen(a, all_rows(a.order()));
  fix_signs(ed.vectors);
  return ed;
}

std::vector<double> eigenvalues_sym(const SymMatrix& a) {
  Tridiagonal t = tridiagonalize(a);
  Matrix none(0, a.order());
  tridiagonal_ql(t.diag, t.off, none);
  std::sort(t.diag.begin(), t.diag.end());
  return t.diag;
}

Matrix cholesky(const SymMatrix& a) {
  const std::size_t n = a.order();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = a(j, j);
    for (std::size_t k = 0; k < j; ++k) s -= l(j, k) * l(j, k);
    if (!(s > 0.0)) throw NotPositiveDefiniteError("cholesky: matrix is not positive definite");
    const double ljj = std::sqrt(s);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double t = a(i, j);
      for (std::size_t k = 0; k < j; ++k) t -= l(i, k) * l(j, k);
      l(i, j) = t / ljj;
    }
  }
  return l;
}

GeneralizedDecomposition eig_sym_generalized(const SymMatrix& h, const SymMatrix& omega) {
  return generalized(h, omega, 0);
}

GeneralizedDecomposition eig_sym_generalized(const SymMatrix& h, const SymMatrix& omega,
                                             std::size_t trailing_rows) {
  const std::size_t n = h.order();
  if (trailing_rows == 0 || trailing_rows > n)
    throw DomainError("eig_sym_generalized: trailing_rows must lie in [1, order]");
  return generalized(h, omega, n - trailing_rows);
}

std::vector<std::complex<double>> eigenvalues_general(const Matrix& m) {
  if (m.rows() != m.cols()) throw DomainError("eigenvalues_general: matrix must be square");
  const int n = static_cast<int>(m.rows());
  std::vector<std::complex<double>> out;
  if (n == 0) return out;
  Matrix h = m;
  auto a = [&](int i, int j) -> double& { return h(i - 1, j - 1); };  // 1-based view

  // Reduction to upper Hessenberg form by stabilized elementary similarity transforms.
  for (int mm = 2; mm < n; ++mm) {
    double x = 0.0;
    int i = mm;
    for (int j = mm; j <= n; ++j) {
      if (std::abs(a(j, mm - 1)) > std::abs(x)) {
        x = a(j, mm - 1);
        i = j;
      }
    }
    if (i != mm) {
      for (int j = mm - 1; j <= n; ++j) std::swap(a(i, j), a(mm, j));
      for (int j = 1; j <= n; ++j) std::swap(a(j, i), a(j, mm));
    }
    if (x != 0.0) {
      for (i = mm + 1; i <= n; ++i) {
        double y = a(i, mm - 1);
        if (y != 0.0) {
          y /= x;
          a(i, mm - 1) = y;
          for (int j = mm; j <= n; ++j) a(i, j) -= y * a(mm, j);
          for (int j = 1; j <= n; ++j) a(j, mm) += y * a(j, i);
        }
      }
    }
  }
  for (int i = 3; i <= n; ++i)
    for (int j = 1; j <= i - 2; ++j) a(i, j) = 0.0;

  // Francis double-shift QR on the Hessenberg matrix.
  std::vector<double> wr(n + 1), wi(n + 1);
  double anorm = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = std::max(i - 1, 1); j <= n; ++j) anorm += std::abs(a(i, j));
  int nn = n;
  double t = 0.0;
  double p = 0, q = 0, r = 0, s = 0, w = 0, x = 0, y = 0, z = 0;
  while (nn >= 1) {
    int its = 0;
    int l;
    do {
      for (l = nn; l >= 2; --l) {
        s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) + s == s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      x = a(nn, nn);
      if (l == nn) {
        wr[nn] = x + t;
        wi[nn--] = 0.0;
      } else {
        y = a(nn - 1, nn - 1);
        w = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          p = 0.5 * (y - x);
          q = p * p + w;
          z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + std::copysign(z, p);
            wr[nn - 1] = wr[nn] = x + z;
            if (z != 0.0) wr[nn] = x - w / z;
            wi[nn - 1] = wi[nn] = 0.0;
          } else {
            wr[nn - 1] = wr[nn] = x + p;
            wi[nn - 1] = -(wi[nn] = z);
          }
          nn -= 2;
        } else {
          if (its == 60) throw ConvergenceError("eigenvalues_general: QR iteration limit reached");
          if (its == 10 || its == 20) {
            t += x;
            for (int i = 1; i <= nn; ++i) a(i, i) -= x;
            s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          int mm;
          for (mm = nn - 2; mm >= l; --mm) {
            z = a(mm, mm);
            r = x - z;
            s = y - z;
            p = (r * s - w) / a(mm + 1, mm) + a(mm, mm + 1);
            q = a(mm + 1, mm + 1) - z - r - s;
            r = a(mm + 2, mm + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (mm == l) break;
            const double u = std::abs(a(mm, mm - 1)) * (std::abs(q) + std::abs(r));
            const double v = std::abs(p) * (std::abs(a(mm - 1, mm - 1)) + std::abs(z) + std::abs(a(mm + 1, mm + 1)));
            if (u + v == v) break;
          }
          for (int i = mm + 2; i <= nn; ++i) {
            a(i, i - 2) = 0.0;
            if (i != mm + 2) a(i, i - 3) = 0.0;
          }
          for (int k = mm; k <= nn - 1; ++k) {
            if (k != mm) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = 0.0;
              if (k != nn - 1) r = a(k + 2, k - 1);
              if ((x = std::abs(p) + std::abs(q) + std::abs(r)) != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            if ((s = std::copysign(std::sqrt(p * p + q * q + r * r), p)) != 0.0) {
              if (k == mm) {
                if (l != mm) a(k, k - 1) = -a(k, k - 1);
              } else {
                a(k, k - 1) = -s * x;
              }
              p += s;
              x = p / s;
              y = q / s;
              z = r / s;
              q /= p;
              r /= p;
              for (int j = k; j <= nn; ++j) {
                p = a(k, j) + q * a(k + 1, j);
                if (k != nn - 1) {
                  p += r * a(k + 2, j);
                  a(k + 2, j) -= p * z;
                }
                a(k + 1, j) -= p * y;
                a(k, j) -= p * x;
              }
              const int mmin = nn < k + 3 ? nn : k + 3;
              for (int i = l; i <= mmin; ++i) {
                p = x * a(i, k) + y * a(i, k + 1);
                if (k != nn - 1) {
                  p += z * a(i, k + 2);
                  a(i, k + 2) -= p * r;
                }
                a(i, k + 1) -= p * q;
                a(i, k) -= p;
              }
            }
          }
        }
      }
    } while (l < nn - 1);
  }
  out.reserve(n);
  for (int i = 1; i <= n; ++i) out.emplace_back(wr[i], wi[i]);
  return out;
}

LuDecomposition::LuDecomposition(const Matrix& a) : lu_(a), perm_(a.rows()) {
  if (a.rows() != a.cols()) throw DomainError("LuDecomposition: matrix must be square");
  const std::size_t n = a.rows();
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  double anorm = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += std::abs(a(i, j));
    anorm = std::max(anorm, col);
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu_(i, k)) > std::abs(lu_(piv, k))) piv = i;
    if (lu_(piv, k) == 0.0)
      throw SingularMatrixError("solve_dense: matrix is singular", std::numeric_limits<double>::infinity());
    if (piv != k) {
      auto rk = lu_.row(k);
      auto rp = lu_.row(piv);
      std::swap_ranges(rk.begin(), rk.end(), rp.begin());
      std::swap(perm_[k], perm_[piv]);
      parity_ = -parity_;
    }
    const double inv = 1.0 / lu_(k, k);
    const auto rk = lu_.row(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      auto ri = lu_.row(i);
      const double f = ri[k] * inv;
      ri[k] = f;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) ri[j] -= f * rk[j];
    }
  }
  cond_ = estimate_condition(anorm);
  if (!(cond_ * kEps < 1.0))
    throw SingularMatrixError("solve_dense: matrix is numerically singular", cond_);
}

std::vector<double> LuDecomposition::solve(std::span<const double> rhs) const {
  const std::size_t n = order();
  if (rhs.size() != n) throw DomainError("solve_dense: right-hand side length mismatch");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm_[i]];
  for (std::size_t i = 0; i < n; ++i) {
    const auto ri = lu_.row(i);
    double s = x[i];
    for (std::size_t j = 0; j < i; ++j) s -= ri[j] * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    const auto ri = lu_.row(i);
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= ri[j] * x[j];
    x[i] = s / ri[i];
  }
  return x;
}

std::vector<std::complex<double>> LuDecomposition::solve(std::span<const std::complex<double>> rhs) const {
  std::vector<double> re(rhs.size()), im(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    re[i] = rhs[i].real();
    im[i] = rhs[i].imag();
  }
  const auto xr = solve(re);
  const auto xi = solve(im);
  std::vector<std::complex<double>> x(xr.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = {xr[i], xi[i]};
  return x;
}

std::vector<double> LuDecomposition::solve_transposed(std::span<const double> rhs) const {
  // A^T = U^T L^T P, so solve U^T w = b, L^T v = w, x = P^T v.
  const std::size_t n = order();
  if (rhs.size() != n) throw DomainError("solve_dense: right-hand side length mismatch");
  std::vector<double> w(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i < n; ++i) {
    double s = w[i];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(j, i) * w[j];
    w[i] = s / lu_(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = w[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu_(j, i) * w[j];
    w[i] = s;
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = w[i];
  return x;
}

double LuDecomposition::determinant() const {
  double d = parity_;
  for (std::size_t i = 0; i < order(); ++i) d *= lu_(i, i);
  return d;
}

double LuDecomposition::estimate_condition(double anorm) const {
  const std::size_t n = order();
  if (n == 0) return 1.0;
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  double est = 0.0;
  for (int iter = 0; iter < 5; ++iter) {
    const auto y = solve(x);
    double ynorm = 0.0;
    for (double v : y) ynorm += std::abs(v);
    if (!std::isfinite(ynorm)) return std::numeric_limits<double>::infinity();
    if (iter > 0 && ynorm <= est) break;
    est = ynorm;
    std::vector<double> sgn(n);
    for (std::size_t i = 0; i < n; ++i) sgn[i] = y[i] >= 0.0 ? 1.0 : -1.0;
    const auto zz = solve_transposed(sgn);
    std::size_t jmax = 0;
    double ztx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      ztx += zz[i] * x[i];
      if (std::abs(zz[i]) > std::abs(zz[jmax])) jmax = i;
    }
    if (std::abs(zz[jmax]) <= ztx) break;
    std::fill(x.begin(), x.end(), 0.0);
    x[jmax] = 1.0;
  }
  return anorm * est;
}

std::vector<double> solve_dense(const Matrix& a, std::span<const double> rhs) {
  return LuDecomposition(a).solve(rhs);
}

std::vector<std::complex<double>> solve_dense(const Matrix& a, std::span<const std::complex<double>> rhs) {
  return LuDecomposition(a).solve(rhs);
}

}  // namespace jmatrix
