#include "ccb/planar.hpp"

#include <algorithm>
#include <cmath>

#include "ccb/rng.hpp"

namespace ccb::planar {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;
constexpr double kEventTol = 1e-12;  // radians

double wrap_angle(double a) {
  a = std::fmod(a, kTau);
  if (a < 0.0) a += kTau;
  return a;
}

struct Interval {
  double start;
  double span;
};

// pieces of [bs, bs+bw] (mod 2*pi) that fall inside [as, as+aw]
void clip(const Interval& a, const Interval& b, std::vector<Interval>& out) {
  const double rel = wrap_angle(b.start - a.start);
  // first piece: [rel, rel+bw] against [0, aw]
  double lo = rel;
  double hi = rel + b.span;
  if (lo < a.span) {
    const double s = std::min(hi, a.span) - lo;
    if (s > kEventTol) out.push_back({wrap_angle(a.start + lo), s});
  }
  // wrapped part past 2*pi
  if (hi > kTau) {
    const double s = std::min(hi - kTau, a.span);
    if (s > kEventTol) out.push_back({a.start, s});
  }
}

// cut of ball j on circle i: the angular interval of circle i lying inside
// ball j. kind: 0 = vacuous (whole circle inside), 1 = dead, 2 = interval.
int cut_interval(const Ball& bi, const Ball& bj, Interval& out) {
  const double ux = bj.center[0] - bi.center[0];
  const double uy = bj.center[1] - bi.center[1];
  const double d = std::hypot(ux, uy);
  if (d <= 1e-14 * std::max(1.0, bi.radius)) {
    // concentric: circle i is inside ball j iff r_i <= r_j
    return (bi.radius <= bj.radius * (1.0 + 1e-12)) ? 0 : 1;
  }
  const double c0 = (d * d + bi.radius * bi.radius - bj.radius * bj.radius) / (2.0 * bi.radius * d);
  if (c0 <= -1.0) return 0;
  if (c0 >= 1.0) return 1;
  const double delta = std::acos(c0);
  if (delta >= 0.5 * kTau - 1e-15) return 0;
  if (delta <= kEventTol) return 1;
  const double phi = std::atan2(uy, ux);
  out.start = wrap_angle(phi - delta);
  out.span = 2.0 * delta;
  return 2;
}

Vec point_on(const Ball& b, double angle) {
  return {b.center[0] + b.radius * std::cos(angle), b.center[1] + b.radius * std::sin(angle)};
}

}  // namespace

ArcSet arc_decomposition(const CcbInstance& inst) {
  if (inst.dim != 2)
    throw SolverError(ErrorCode::DimensionMismatch, "arc decomposition needs n == 2");
  const int p = inst.p();
  ArcSet set;
  set.per_circle.resize(p);

  // per circle: list of constraint intervals, or dead
  std::vector<std::vector<Interval>> cuts(p);
  std::vector<bool> dead(p, false);
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      ++set.pair_evaluations;
      Interval iv;
      int kind = cut_interval(inst.balls[i], inst.balls[j], iv);
      if (kind == 1)
        dead[i] = true;
      else if (kind == 2)
        cuts[i].push_back(iv);
      kind = cut_interval(inst.balls[j], inst.balls[i], iv);
      if (kind == 1)
        dead[j] = true;
      else if (kind == 2)
        cuts[j].push_back(iv);
    }
  }

  for (int i = 0; i < p; ++i) {
    CircleArcs& ca = set.per_circle[i];
    if (dead[i]) {
      ca.dead = true;
      continue;
    }
    if (cuts[i].empty()) {
      ca.full_circle = true;
      continue;
    }
    std::vector<Interval> current{{cuts[i][0].start, cuts[i][0].span}};
    for (std::size_t k = 1; k < cuts[i].size() && !current.empty(); ++k) {
      std::vector<Interval> next;
      for (const Interval& a : current) clip(a, cuts[i][k], next);
      current = std::move(next);
    }
    if (current.empty()) {
      ca.dead = true;
      continue;
    }
    std::sort(current.begin(), current.end(),
              [](const Interval& a, const Interval& b) { return a.start < b.start; });
    for (const Interval& iv : current) {
      Arc arc;
      arc.start = iv.start;
      arc.span = iv.span;
      arc.first = point_on(inst.balls[i], iv.start);
      arc.second = point_on(inst.balls[i], iv.start + iv.span);
      ca.arcs.push_back(std::move(arc));
    }
  }
  return set;
}

std::optional<CcbSolution> major_arc_shortcut(const ArcSet& arcs, const CcbInstance& inst) {
  for (int i = 0; i < inst.p(); ++i) {
    const CircleArcs& ca = arcs.per_circle[i];
    if (ca.dead) continue;
    bool major = ca.full_circle;
    for (const Arc& a : ca.arcs)
      if (a.span >= 0.5 * kTau - 1e-9) major = true;
    if (major) {
      CcbSolution sol;
      sol.center = inst.balls[i].center;
      sol.squared_radius = inst.balls[i].radius * inst.balls[i].radius;
      sol.method = CcbMethod::Planar;
      return sol;
    }
  }
  return std::nullopt;
}

namespace {

bool circle_contains(const Circle& c, const Vec& p) {
  if (c.radius < 0.0) return false;
  const double dx = p[0] - c.center[0];
  const double dy = p[1] - c.center[1];
  const double r2 = c.radius * c.radius;
  return dx * dx + dy * dy <= r2 + 1e-12 * std::max(1.0, r2);
}

Circle circle_two(const Vec& a, const Vec& b) {
  Circle c;
  c.center = {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
  c.radius = 0.5 * std::hypot(a[0] - b[0], a[1] - b[1]);
  c.support = {a, b};
  return c;
}

Circle circle_three(const Vec& a, const Vec& b, const Vec& c0) {
  const double bx = b[0] - a[0], by = b[1] - a[1];
  const double cx = c0[0] - a[0], cy = c0[1] - a[1];
  const double cross = bx * cy - by * cx;
  double scale = std::max({std::fabs(bx), std::fabs(by), std::fabs(cx), std::fabs(cy), 1e-30});
  if (std::fabs(cross) <= 1e-14 * scale * scale) {
    // collinear: the farthest pair is diametric
    Circle best = circle_two(a, b);
    for (const Circle& cand : {circle_two(a, c0), circle_two(b, c0)})
      if (cand.radius > best.radius) best = cand;
    return best;
  }
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  const double ux = (cy * b2 - by * c2) / (2.0 * cross);
  const double uy = (bx * c2 - cx * b2) / (2.0 * cross);
  Circle c;
  c.center = {a[0] + ux, a[1] + uy};
  c.radius = std::hypot(ux, uy);
  c.support = {a, b, c0};
  return c;
}

}  // namespace

Circle welzl(const std::vector<Vec>& points, std::uint64_t seed) {
  Circle c;
  c.center = {0.0, 0.0};
  c.radius = 0.0;
  if (points.empty()) return c;

  std::vector<const Vec*> pts(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) pts[i] = &points[i];
  SplitMix64 rng(seed);
  for (std::size_t i = pts.size(); i > 1; --i) std::swap(pts[i - 1], pts[rng.next_u64() % i]);

  c.center = *pts[0];
  c.radius = 0.0;
  c.support = {*pts[0]};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (circle_contains(c, *pts[i])) continue;
    c.center = *pts[i];
    c.radius = 0.0;
    c.support = {*pts[i]};
    for (std::size_t j = 0; j < i; ++j) {
      if (circle_contains(c, *pts[j])) continue;
      c = circle_two(*pts[i], *pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (circle_contains(c, *pts[k])) continue;
        c = circle_three(*pts[i], *pts[j], *pts[k]);
      }
    }
  }
  return c;
}

CcbSolution solve_planar(const CcbInstance& inst, const SolveOptions& opts, PlanarStats* stats) {
  if (inst.dim != 2)
    throw SolverError(ErrorCode::DimensionMismatch, "planar solver needs n == 2");

  const ArcSet arcs = arc_decomposition(inst);
  if (stats) {
    stats->pair_evaluations = arcs.pair_evaluations;
    stats->endpoint_count = 0;
    stats->shortcut = false;
  }

  if (auto shortcut = major_arc_shortcut(arcs, inst)) {
    if (stats) stats->shortcut = true;
    return *shortcut;
  }

  std::vector<Vec> endpoints;
  for (int i = 0; i < inst.p(); ++i) {
    const double tol = 1e-9 * std::max(1.0, inst.balls[i].radius);
    for (const Arc& a : arcs.per_circle[i].arcs) {
      for (const Vec* pt : {&a.first, &a.second}) {
        bool dup = false;
        for (const Vec& q : endpoints)
          if (std::fabs(q[0] - (*pt)[0]) <= tol && std::fabs(q[1] - (*pt)[1]) <= tol) {
            dup = true;
            break;
          }
        if (!dup) endpoints.push_back(*pt);
      }
    }
  }
  if (stats) stats->endpoint_count = endpoints.size();

  CcbSolution sol;
  sol.method = CcbMethod::Planar;
  if (!endpoints.empty()) {
    const Circle mec = welzl(endpoints, 0x9e3779b9ULL);
    sol.center = mec.center;
    sol.squared_radius = mec.radius * mec.radius;
    const double achieved = evaluate_center(inst, sol.center, opts);
    if (std::fabs(achieved - sol.squared_radius) <=
        1e-6 * std::max(1.0, sol.squared_radius))
      return sol;
  }

  // numerically pathological input (or no endpoints at all): answer with the
  // ellipsoid method and flag the discrepancy
  CcbEllipsoidOptions eopts;
  eopts.eps = 1e-7;
  eopts.inner = opts;
  CcbSolution fb = solve_ccb_ellipsoid(inst, eopts);
  fb.method = CcbMethod::Planar;
  fb.fallback_used = true;
  return fb;
}

}  // namespace ccb::planar
