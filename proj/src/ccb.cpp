#include "ccb/ccb.hpp"

#include <algorithm>
#include <cmath>

#include "ccb/core.hpp"
#include "ccb/ellipsoid.hpp"

namespace ccb {

namespace {

int smallest_radius_ball(const CcbInstance& inst) {
  int q = 0;
  for (int i = 1; i < inst.p(); ++i)
    if (inst.balls[i].radius < inst.balls[q].radius) q = i;
  return q;
}

}  // namespace

SqpResult solve_sqp(const CcbInstance& inst, double gap_tol) {
  const int p = inst.p();
  const int n = inst.dim;
  Vec d(p);
  for (int i = 0; i < p; ++i)
    d[i] = inst.balls[i].radius * inst.balls[i].radius - norm_sq(inst.balls[i].center);

  Vec lambda(p, 1.0 / p);
  Vec mix(n, 0.0);  // sum lambda_i a_i
  auto recompute_mix = [&]() {
    std::fill(mix.begin(), mix.end(), 0.0);
    for (int i = 0; i < p; ++i)
      if (lambda[i] != 0.0) axpy(lambda[i], inst.balls[i].center, mix);
  };
  recompute_mix();

  Vec grad(p);
  const int max_iter = 200000;
  int it = 0;
  double gap = 0.0;
  for (; it < max_iter; ++it) {
    for (int i = 0; i < p; ++i) grad[i] = d[i] + 2.0 * dot(inst.balls[i].center, mix);

    int s = 0;
    for (int i = 1; i < p; ++i)
      if (grad[i] < grad[s]) s = i;
    const double glam = dot(grad, lambda);
    gap = glam - grad[s];
    if (gap <= gap_tol) break;

    int v = -1;
    for (int i = 0; i < p; ++i)
      if (lambda[i] > 0.0 && (v < 0 || grad[i] > grad[v])) v = i;
    const double away_gap = grad[v] - glam;

    // direction and maximal step
    bool fw = gap >= away_gap;
    double gmax, ddot;       // step cap, gradient . direction
    Vec adir(n, 0.0);        // A * direction
    if (fw) {
      gmax = 1.0;
      ddot = -gap;
      adir = sub(inst.balls[s].center, mix);
    } else {
      if (lambda[v] >= 1.0 - 1e-15) {
        fw = true;  // away from a single vertex is the FW direction anyway
        gmax = 1.0;
        ddot = -gap;
        adir = sub(inst.balls[s].center, mix);
      } else {
        gmax = lambda[v] / (1.0 - lambda[v]);
        ddot = -away_gap;
        adir = sub(mix, inst.balls[v].center);
      }
    }
    const double curv = 2.0 * norm_sq(adir);
    double step = gmax;
    if (curv > 1e-300) step = std::min(gmax, -ddot / curv);
    if (step <= 0.0) break;

    if (fw) {
      for (int i = 0; i < p; ++i) lambda[i] *= (1.0 - step);
      lambda[s] += step;
    } else {
      for (int i = 0; i < p; ++i) lambda[i] *= (1.0 + step);
      lambda[v] -= step;
      if (step == gmax) lambda[v] = 0.0;  // drop step, exact zero
    }
    // keep the iterate exactly on the simplex
    double sum = 0.0;
    for (double& l : lambda) {
      if (l < 0.0) l = 0.0;
      sum += l;
    }
    for (double& l : lambda) l /= sum;
    recompute_mix();
  }
  if (gap > gap_tol)
    throw SolverError(ErrorCode::IterationLimit, "frank-wolfe gap did not reach tolerance");

  SqpResult res;
  res.lambda = lambda;
  res.z_bar = mix;
  res.value = dot(d, lambda) + norm_sq(mix);
  res.stationarity_gap = gap;
  res.iterations = it;
  return res;
}

double evaluate_center(const CcbInstance& inst, const Vec& z, const SolveOptions& opts) {
  return solve_exact(inner_uq(inst, z), opts).value + norm_sq(z);
}

Vec ccb_subgradient(const CcbInstance& inst, const Vec& z, const SolveOptions& opts) {
  const UqSolution inner = solve_exact(inner_uq(inst, z), opts);
  Vec g = sub(z, inner.x);
  for (double& v : g) v *= 2.0;
  return g;
}

RatioCertificate sqp_certificate(const CcbInstance& inst, const SqpResult& sqp,
                                 const SolveOptions& opts) {
  RatioCertificate cert;
  const InteriorCertificate ic = find_interior_point(inst, 1e-9);
  double gamma = ic.gamma;
  cert.gamma_source = RatioCertificate::Source::ChebOptimal;

  double dmax = 0.0;
  for (int i = 0; i < inst.p(); ++i)
    for (int j = i + 1; j < inst.p(); ++j)
      dmax = std::max(dmax, dist(inst.balls[i].center, inst.balls[j].center));
  double rmin = inst.balls[0].radius;
  for (const Ball& b : inst.balls) rmin = std::min(rmin, b.radius);
  const double gamma_dmax = dmax / (std::sqrt(2.0) * rmin);
  if (gamma_dmax < 1.0 && gamma_dmax < gamma) {
    gamma = gamma_dmax;
    cert.gamma_source = RatioCertificate::Source::DmaxBound;
  }

  cert.gamma = gamma;
  cert.gamma_below_one = gamma < 1.0;
  cert.upper = sqp.value;
  cert.achieved = evaluate_center(inst, sqp.z_bar, opts);
  if (!cert.gamma_below_one) {
    cert.ratio = 0.0;
    cert.lower = 0.0;
    return cert;
  }
  const double h = (1.0 - gamma) / (std::sqrt(2.0) + gamma);
  cert.ratio = h * h;
  cert.lower = cert.ratio * sqp.value;
  const double slack = 1e-6 * std::max(1.0, std::fabs(cert.upper));
  if (cert.achieved > cert.upper + slack || cert.achieved < cert.lower - slack)
    throw SolverError(ErrorCode::NumericalFailure, "certificate sandwich violated");
  return cert;
}

int ellipsoid_iteration_bound(const CcbInstance& inst, double eps) {
  const int q = smallest_radius_ball(inst);
  const int n = inst.dim;
  const double m_lip = 4.0 * (norm(inst.balls[q].center) + inst.balls[q].radius);
  const double mr = m_lip * inst.balls[q].radius;
  if (mr <= eps) return 0;
  return static_cast<int>(std::ceil(2.0 * (n + 1) * (n + 1) * std::log(mr / eps)));
}

CcbSolution solve_ccb_ellipsoid(const CcbInstance& inst, const CcbEllipsoidOptions& opts) {
  const int n = inst.dim;
  const int q = smallest_radius_ball(inst);
  const Ball& bq = inst.balls[q];

  CcbSolution sol;
  sol.method = CcbMethod::Ellipsoid;
  sol.eps_bound = opts.eps;

  auto f = [&](const Vec& z) { return evaluate_center(inst, z, opts.inner); };

  if (n == 1) {
    double bf = 0.0;
    const double lip = 4.0 * (std::fabs(bq.center[0]) + bq.radius);
    const double xtol = opts.eps / std::max(lip, 1.0);
    const double bx = minimize_convex_1d([&](double z) { return f({z}); },
                                         bq.center[0] - bq.radius, bq.center[0] + bq.radius,
                                         xtol, &bf);
    sol.center = {bx};
    sol.squared_radius = bf;
    return sol;
  }

  EllipsoidProblem prob;
  prob.q_center = bq.center;
  prob.q_radius = bq.radius;
  prob.value = f;
  prob.subgradient = [&](const Vec& z) { return ccb_subgradient(inst, z, opts.inner); };

  EllipsoidOptions eopts;
  eopts.iterations = ellipsoid_iteration_bound(inst, opts.eps);
  eopts.max_iterations = opts.max_iter;
  eopts.observer = opts.observer;
  const EllipsoidResult res = ellipsoid_minimize(prob, eopts);

  sol.center = res.best_point;
  sol.squared_radius = res.best_value;
  sol.iterations = res.iterations;
  if (res.hit_iteration_cap) {
    sol.converged = false;
    const double m_lip = 4.0 * (norm(bq.center) + bq.radius);
    sol.eps_bound =
        m_lip * bq.radius * std::exp(-res.iterations / (2.0 * (n + 1) * (n + 1)));
  }
  return sol;
}

}  // namespace ccb
