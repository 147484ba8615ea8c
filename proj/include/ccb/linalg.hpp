#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

// Small dense linear algebra helpers. Everything here operates on
// std::vector<double>; dimensions in this project are tiny (n, p well
// below a few hundred), so no effort is spent on blocking or BLAS.

namespace ccb {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm_sq(const Vec& a) { return dot(a, a); }

inline double norm(const Vec& a) { return std::sqrt(norm_sq(a)); }

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec scaled(const Vec& a, double s) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

// y += s*x
inline void axpy(double s, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

inline double dist(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline bool all_finite(const Vec& a) {
  for (double x : a)
    if (!std::isfinite(x)) return false;
  return true;
}

// Row-major dense square matrix with in-place LU (partial pivoting).
// Factorization fails (returns false) when a pivot falls below
// `pivot_tol * max|A|`, which doubles as the rank/independence test used
// by the enumeration solver.
class LuFactor {
 public:
  bool factor(std::vector<double> a, int n, double pivot_tol) {
    a_ = std::move(a);
    n_ = n;
    perm_.resize(n);
    for (int i = 0; i < n; ++i) perm_[i] = i;
    double amax = 0.0;
    for (double x : a_) amax = std::max(amax, std::fabs(x));
    const double thresh = pivot_tol * std::max(amax, 1e-300);
    for (int k = 0; k < n; ++k) {
      int piv = k;
      double best = std::fabs(a_[k * n + k]);
      for (int i = k + 1; i < n; ++i) {
        const double v = std::fabs(a_[i * n + k]);
        if (v > best) {
          best = v;
          piv = i;
        }
      }
      if (best <= thresh) return false;
      if (piv != k) {
        for (int j = 0; j < n; ++j) std::swap(a_[k * n + j], a_[piv * n + j]);
        std::swap(perm_[k], perm_[piv]);
      }
      const double d = a_[k * n + k];
      for (int i = k + 1; i < n; ++i) {
        const double m = a_[i * n + k] / d;
        a_[i * n + k] = m;
        for (int j = k + 1; j < n; ++j) a_[i * n + j] -= m * a_[k * n + j];
      }
    }
    return true;
  }

  // Solves A x = b for the factored A.
  Vec solve(const Vec& b) const {
    Vec x(n_);
    for (int i = 0; i < n_; ++i) x[i] = b[perm_[i]];
    for (int i = 1; i < n_; ++i) {
      double s = x[i];
      for (int j = 0; j < i; ++j) s -= a_[i * n_ + j] * x[j];
      x[i] = s;
    }
    for (int i = n_ - 1; i >= 0; --i) {
      double s = x[i];
      for (int j = i + 1; j < n_; ++j) s -= a_[i * n_ + j] * x[j];
      x[i] = s / a_[i * n_ + i];
    }
    return x;
  }

 private:
  std::vector<double> a_;
  std::vector<int> perm_;
  int n_ = 0;
};

// Allocation-free LU with partial pivoting on a raw k x k row-major buffer.
// Returns false when a pivot falls below pivot_tol * max|A|.
inline bool lu_inplace(double* a, int k, int* perm, double pivot_tol) {
  for (int i = 0; i < k; ++i) perm[i] = i;
  double amax = 0.0;
  for (int i = 0; i < k * k; ++i) amax = std::max(amax, std::fabs(a[i]));
  const double thresh = pivot_tol * std::max(amax, 1e-300);
  for (int col = 0; col < k; ++col) {
    int piv = col;
    double best = std::fabs(a[col * k + col]);
    for (int i = col + 1; i < k; ++i) {
      const double v = std::fabs(a[i * k + col]);
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best <= thresh) return false;
    if (piv != col) {
      for (int j = 0; j < k; ++j) std::swap(a[col * k + j], a[piv * k + j]);
      std::swap(perm[col], perm[piv]);
    }
    const double d = a[col * k + col];
    for (int i = col + 1; i < k; ++i) {
      const double m = a[i * k + col] / d;
      a[i * k + col] = m;
      for (int j = col + 1; j < k; ++j) a[i * k + j] -= m * a[col * k + j];
    }
  }
  return true;
}

inline void lu_solve_inplace(const double* a, int k, const int* perm, const double* b, double* x) {
  for (int i = 0; i < k; ++i) x[i] = b[perm[i]];
  for (int i = 1; i < k; ++i) {
    double s = x[i];
    for (int j = 0; j < i; ++j) s -= a[i * k + j] * x[j];
    x[i] = s;
  }
  for (int i = k - 1; i >= 0; --i) {
    double s = x[i];
    for (int j = i + 1; j < k; ++j) s -= a[i * k + j] * x[j];
    x[i] = s / a[i * k + i];
  }
}

// Orthonormal basis of span{rows} by modified Gram-Schmidt with greedy
// pivoting (largest residual norm first; ties broken by index). Returns the
// basis vectors; rank = result.size(). Deterministic for fixed input order.
inline std::vector<Vec> orthonormal_basis(const std::vector<Vec>& rows, double tol) {
  std::vector<Vec> q;
  if (rows.empty()) return q;
  const std::size_t n = rows[0].size();
  std::vector<Vec> resid = rows;
  double scale = 0.0;
  for (const Vec& r : rows) scale = std::max(scale, norm(r));
  if (scale == 0.0) return q;
  std::vector<bool> used(rows.size(), false);
  for (std::size_t step = 0; step < std::min(rows.size(), n); ++step) {
    std::size_t best = rows.size();
    double best_norm = tol * scale;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (used[i]) continue;
      const double nv = norm(resid[i]);
      if (nv > best_norm) {
        best_norm = nv;
        best = i;
      }
    }
    if (best == rows.size()) break;
    used[best] = true;
    Vec v = scaled(resid[best], 1.0 / best_norm);
    // re-orthogonalize once for numerical hygiene
    for (const Vec& qq : q) axpy(-dot(qq, v), qq, v);
    const double nv = norm(v);
    if (nv <= tol) continue;
    v = scaled(v, 1.0 / nv);
    q.push_back(v);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (used[i]) continue;
      axpy(-dot(v, resid[i]), v, resid[i]);
    }
  }
  return q;
}

// Minimum-norm solution of the underdetermined system R v = d, where the
// k rows of R are linearly independent: v = R^T (R R^T)^{-1} d.
// Returns false when R R^T is numerically singular.
inline bool min_norm_solve(const std::vector<Vec>& r_rows, const Vec& d, Vec& out) {
  const int k = static_cast<int>(r_rows.size());
  if (k == 0) {
    for (double& x : out) x = 0.0;
    return true;
  }
  std::vector<double> gram(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) gram[i * k + j] = dot(r_rows[i], r_rows[j]);
  LuFactor lu;
  if (!lu.factor(std::move(gram), k, 1e-12)) return false;
  const Vec y = lu.solve(d);
  std::fill(out.begin(), out.end(), 0.0);
  for (int i = 0; i < k; ++i) axpy(y[i], r_rows[i], out);
  return true;
}

}  // namespace ccb
