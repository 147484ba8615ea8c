#include "ccb/ellipsoid.hpp"

#include <cmath>
#include <limits>

namespace ccb {

// The iteration is carried in the factor B with H = B B', which keeps H
// positive semidefinite by construction and roughly squares the usable
// dynamic range compared to updating H directly:
//   v = B'g,  y+ = y - (1/(n+1)) B v / ||v||,
//   B+ = n/sqrt(n^2-1) * (B - (1 - sqrt((n-1)/(n+1))) (B v) v'/||v||^2).
// Expanding B+ B+' recovers the usual rank-one H update.

EllipsoidResult ellipsoid_minimize(const EllipsoidProblem& prob, const EllipsoidOptions& opts) {
  const int n = static_cast<int>(prob.q_center.size());
  EllipsoidResult res;
  res.best_point = prob.q_center;
  res.best_value = prob.value(prob.q_center);

  Vec y = prob.q_center;
  std::vector<double> b(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) b[i * n + i] = prob.q_radius;

  int total = opts.iterations;
  if (opts.max_iterations > 0 && opts.max_iterations < total) {
    total = opts.max_iterations;
    res.hit_iteration_cap = true;
  }

  const double scale = static_cast<double>(n) / std::sqrt(static_cast<double>(n) * n - 1.0);
  const double shrink =
      1.0 - std::sqrt((static_cast<double>(n) - 1.0) / (static_cast<double>(n) + 1.0));

  Vec g(n), v(n), bv(n);
  std::vector<double> h;
  for (int k = 0; k < total; ++k) {
    if (opts.observer) {
      h.assign(static_cast<std::size_t>(n) * n, 0.0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) s += b[i * n + l] * b[j * n + l];
          h[i * n + j] = s;
        }
      opts.observer(k, y, h);
    }
    const double feas = dist(y, prob.q_center);
    if (feas <= prob.q_radius * (1.0 + 1e-12)) {
      const double fy = prob.value(y);
      if (fy < res.best_value) {
        res.best_value = fy;
        res.best_point = y;
      }
      g = prob.subgradient(y);
    } else {
      g = sub(y, prob.q_center);
      for (double& gv : g) gv *= 2.0;
    }

    // v = B' g
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += b[i * n + j] * g[i];
      v[j] = s;
    }
    const double vn = norm(v);
    if (!(vn > 0.0) || !std::isfinite(vn)) {
      res.iterations = k;
      return res;  // zero subgradient: current branch is optimal
    }
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += b[i * n + j] * v[j];
      bv[i] = s;
    }
    for (int i = 0; i < n; ++i) y[i] -= bv[i] / ((n + 1) * vn);
    const double c = shrink / (vn * vn);
    for (int i = 0; i < n; ++i) {
      const double f = c * bv[i];
      for (int j = 0; j < n; ++j) b[i * n + j] = scale * (b[i * n + j] - f * v[j]);
    }
    res.iterations = k + 1;
  }
  return res;
}

double minimize_convex_1d(const std::function<double(double)>& f, double lo, double hi,
                          double xtol, double* best_value) {
  const double invphi = 0.6180339887498948482;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int iter = 0; iter < 400 && (b - a) > xtol; ++iter) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  const double fm = f(xm);
  double bx = xm, bf = fm;
  if (f1 < bf) {
    bx = x1;
    bf = f1;
  }
  if (f2 < bf) {
    bx = x2;
    bf = f2;
  }
  if (best_value) *best_value = bf;
  return bx;
}

}  // namespace ccb
