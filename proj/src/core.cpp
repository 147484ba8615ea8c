#include "ccb/core.hpp"

#include <algorithm>
#include <cmath>

#include "ccb/ellipsoid.hpp"

namespace ccb {

namespace {

void check_shape(const CcbInstance& inst) {
  if (inst.dim < 1 || inst.balls.empty())
    throw SolverError(ErrorCode::DimensionMismatch, "instance needs dim >= 1 and p >= 1");
  for (const Ball& b : inst.balls) {
    if (static_cast<int>(b.center.size()) != inst.dim)
      throw SolverError(ErrorCode::DimensionMismatch, "ball center dimension mismatch");
    if (!(b.radius > 0.0) || !std::isfinite(b.radius) || !all_finite(b.center))
      throw SolverError(ErrorCode::DimensionMismatch, "ball needs finite center and radius > 0");
  }
}

int argmax_scaled(const CcbInstance& inst, const Vec& x) {
  int best = 0;
  double bv = -1.0;
  for (int i = 0; i < inst.p(); ++i) {
    const double v = dist(x, inst.balls[i].center) / inst.balls[i].radius;
    if (v > bv) {
      bv = v;
      best = i;
    }
  }
  return best;
}

}  // namespace

double scaled_minimax(const CcbInstance& inst, const Vec& x) {
  double v = 0.0;
  for (const Ball& b : inst.balls) v = std::max(v, dist(x, b.center) / b.radius);
  return v;
}

InteriorCertificate find_interior_point(const CcbInstance& inst, double tol) {
  check_shape(inst);
  const int n = inst.dim;
  const int p = inst.p();

  Vec y0(n, 0.0);
  for (const Ball& b : inst.balls) axpy(1.0 / p, b.center, y0);

  const double g0 = scaled_minimax(inst, y0);
  if (g0 == 0.0) return {y0, 0.0};

  double rmin = inst.balls[0].radius, rmax = rmin, dmax = 0.0;
  for (const Ball& b : inst.balls) {
    rmin = std::min(rmin, b.radius);
    rmax = std::max(rmax, b.radius);
    dmax = std::max(dmax, dist(y0, b.center));
  }
  // any minimizer x* has g(x*) <= g(y0), hence ||x* - a_i|| <= g(y0) r_i
  const double radius = g0 * rmax + dmax + 1e-9;

  if (n == 1) {
    auto f = [&](double x) { return scaled_minimax(inst, {x}); };
    double bf = 0.0;
    const double bx =
        minimize_convex_1d(f, y0[0] - radius, y0[0] + radius, tol * rmin * 1e-3, &bf);
    Vec pt{bx};
    return {pt, scaled_minimax(inst, pt)};
  }

  EllipsoidProblem prob;
  prob.q_center = y0;
  prob.q_radius = radius;
  prob.value = [&](const Vec& x) { return scaled_minimax(inst, x); };
  prob.subgradient = [&](const Vec& x) {
    const int i = argmax_scaled(inst, x);
    Vec g = sub(x, inst.balls[i].center);
    const double d = norm(g);
    if (d == 0.0) return Vec(x.size(), 0.0);
    return scaled(g, 1.0 / (d * inst.balls[i].radius));
  };

  const double lip = 1.0 / rmin;
  double iters = 0.0;
  if (lip * radius > tol)
    iters = std::ceil(2.0 * (n + 1) * (n + 1) * std::log(lip * radius / tol));
  EllipsoidOptions opts;
  opts.iterations = static_cast<int>(std::min(iters, 2e6));
  const EllipsoidResult res = ellipsoid_minimize(prob, opts);
  return {res.best_point, scaled_minimax(inst, res.best_point)};
}

InteriorCertificate validate(const CcbInstance& inst) {
  check_shape(inst);
  InteriorCertificate cert = find_interior_point(inst, 1e-9);
  if (cert.gamma >= 1.0 - 1e-7)
    throw SolverError(ErrorCode::EmptyInterior,
                      "intersection has empty interior (gamma = " + std::to_string(cert.gamma) + ")");
  return cert;
}

UqInstance inner_uq(const CcbInstance& inst, const Vec& z) {
  if (static_cast<int>(z.size()) != inst.dim)
    throw SolverError(ErrorCode::DimensionMismatch, "center dimension mismatch");
  UqInstance uq;
  uq.dim = inst.dim;
  uq.a0 = z;
  uq.constraints.reserve(inst.balls.size());
  for (const Ball& b : inst.balls)
    uq.constraints.push_back({b.center, norm_sq(b.center) - b.radius * b.radius});
  return uq;
}

std::pair<UqInstance, double> recenter(const UqInstance& uq, const Vec& x0) {
  if (static_cast<int>(x0.size()) != uq.dim)
    throw SolverError(ErrorCode::DimensionMismatch, "recenter point dimension mismatch");
  UqInstance out;
  out.dim = uq.dim;
  out.a0 = sub(uq.a0, x0);
  out.constraints.reserve(uq.constraints.size());
  for (int i = 0; i < uq.p(); ++i) {
    const double fb = uq.fi(i, x0);
    const double scale = std::max(1.0, std::fabs(uq.constraints[i].b));
    if (fb >= -1e-9 * scale)
      throw SolverError(ErrorCode::NotInterior, "recenter point not strictly interior");
    out.constraints.push_back({sub(uq.constraints[i].a, x0), fb});
  }
  return {out, uq.f0(x0)};
}

bool feasible(const UqInstance& uq, const Vec& x, double tol) {
  if (static_cast<int>(x.size()) != uq.dim)
    throw SolverError(ErrorCode::DimensionMismatch, "point dimension mismatch");
  for (int i = 0; i < uq.p(); ++i) {
    const double scale = std::max(1.0, std::fabs(uq.constraints[i].b));
    if (uq.fi(i, x) > tol * scale) return false;
  }
  return true;
}

CcbInstance uq_constraint_balls(const UqInstance& uq) {
  CcbInstance inst;
  inst.dim = uq.dim;
  inst.balls.reserve(uq.constraints.size());
  for (const UqConstraint& c : uq.constraints) {
    const double r2 = norm_sq(c.a) - c.b;
    if (!(r2 > 0.0))
      throw SolverError(ErrorCode::EmptyInterior, "constraint ball has nonpositive squared radius");
    inst.balls.push_back({c.a, std::sqrt(r2)});
  }
  return inst;
}

}  // namespace ccb
