#include "ccb/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "ccb/rng.hpp"

namespace ccb::oracle {

namespace {

bool ball_feasible(const CcbInstance& inst, const Vec& x, double rel_slack) {
  for (const Ball& b : inst.balls)
    if (dist(x, b.center) > b.radius * (1.0 + rel_slack)) return false;
  return true;
}

bool uq_point_ok(const UqInstance& uq, const Vec& x, double slack) {
  for (int i = 0; i < uq.p(); ++i) {
    const double scale = std::max(1.0, std::fabs(uq.constraints[i].b));
    if (uq.fi(i, x) > slack * scale) return false;
  }
  return true;
}

CcbInstance balls_of(const UqInstance& uq) {
  CcbInstance inst;
  inst.dim = uq.dim;
  for (const UqConstraint& c : uq.constraints) {
    const double r2 = norm_sq(c.a) - c.b;
    inst.balls.push_back({c.a, std::sqrt(std::max(r2, 1e-300))});
  }
  return inst;
}

Vec random_direction(SplitMix64& rng, int n) {
  Vec u(n);
  double nn = 0.0;
  do {
    for (int i = 0; i < n; ++i) u[i] = rng.normal();
    nn = norm(u);
  } while (nn < 1e-12);
  return scaled(u, 1.0 / nn);
}

// coordinate-ascent polish keeping the point feasible
void polish(const UqInstance& uq, Vec& x, double& fx, double step0) {
  double h = step0;
  int evals = 0;
  while (h > 1e-12 && evals < 20000) {
    bool moved = false;
    for (int j = 0; j < uq.dim; ++j) {
      for (double s : {h, -h}) {
        Vec y = x;
        y[j] += s;
        ++evals;
        const double fy = uq.f0(y);
        if (fy > fx && uq_point_ok(uq, y, 1e-12)) {
          x = y;
          fx = fy;
          moved = true;
        }
      }
    }
    if (!moved) h *= 0.5;
  }
}

}  // namespace

Vec oracle_interior_point(const CcbInstance& inst) {
  const int n = inst.dim;
  Vec x(n, 0.0);
  for (const Ball& b : inst.balls) axpy(1.0 / inst.p(), b.center, x);
  double rmin = inst.balls[0].radius;
  for (const Ball& b : inst.balls) rmin = std::min(rmin, b.radius);
  const double target = -0.05 * rmin;

  auto h_of = [&](const Vec& y, int* arg) {
    double best = -1e300;
    int bi = 0;
    for (int i = 0; i < inst.p(); ++i) {
      const double v = dist(y, inst.balls[i].center) - inst.balls[i].radius;
      if (v > best) {
        best = v;
        bi = i;
      }
    }
    if (arg) *arg = bi;
    return best;
  };

  Vec best = x;
  double best_h = h_of(x, nullptr);
  for (int it = 0; it < 2000 && best_h > target; ++it) {
    int ai = 0;
    const double hx = h_of(x, &ai);
    Vec g = sub(x, inst.balls[ai].center);
    const double gn = norm(g);
    if (gn < 1e-14) break;
    // Polyak step toward the target level (subgradient has unit norm)
    axpy(-(hx - target) / gn * std::min(1.0, 1.0), g, x);
    const double hn = h_of(x, nullptr);
    if (hn < best_h) {
      best_h = hn;
      best = x;
    }
  }
  return best;
}

OracleValue oracle_uq(const UqInstance& uq, const OracleConfig& cfg) {
  const int n = uq.dim;
  const CcbInstance balls = balls_of(uq);

  // bounding box of the feasible set
  Vec lo(n, -1e300), hi(n, 1e300);
  for (const Ball& b : balls.balls)
    for (int j = 0; j < n; ++j) {
      lo[j] = std::max(lo[j], b.center[j] - b.radius);
      hi[j] = std::min(hi[j], b.center[j] + b.radius);
    }

  double diam = 0.0;
  for (int j = 0; j < n; ++j) diam = std::max(diam, hi[j] - lo[j]);

  OracleValue out;
  bool found = false;
  Vec best(n, 0.0);
  double best_f = -1e300;
  double step = cfg.grid_step;

  if (n <= 3) {
    // enlarge the step if the grid would be absurdly large
    double cells = 1.0;
    for (int j = 0; j < n; ++j) cells *= std::floor(std::max(0.0, hi[j] - lo[j]) / step) + 1.0;
    while (cells > 4e7) {
      step *= 2.0;
      cells = 1.0;
      for (int j = 0; j < n; ++j) cells *= std::floor(std::max(0.0, hi[j] - lo[j]) / step) + 1.0;
    }
    std::vector<int> counts(n);
    for (int j = 0; j < n; ++j)
      counts[j] = std::max(1, static_cast<int>(std::floor((hi[j] - lo[j]) / step)) + 1);
    std::vector<int> idx(n, 0);
    Vec x(n);
    while (true) {
      for (int j = 0; j < n; ++j) x[j] = std::min(lo[j] + idx[j] * step, hi[j]);
      if (uq_point_ok(uq, x, 1e-12)) {
        const double f = uq.f0(x);
        if (f > best_f) {
          best_f = f;
          best = x;
          found = true;
        }
      }
      int j = 0;
      while (j < n && ++idx[j] == counts[j]) idx[j++] = 0;
      if (j == n) break;
    }
  } else {
    SplitMix64 seq(cfg.seed);
    Vec x(n);
    for (int s = 0; s < cfg.samples; ++s) {
      SplitMix64 rng = derived_stream(cfg.seed, static_cast<std::uint64_t>(s));
      for (int j = 0; j < n; ++j) x[j] = rng.uniform(lo[j], hi[j]);
      if (uq_point_ok(uq, x, 1e-12)) {
        const double f = uq.f0(x);
        if (f > best_f) {
          best_f = f;
          best = x;
          found = true;
        }
      }
    }
  }

  if (!found) {
    best = oracle_interior_point(balls);
    best_f = uq.f0(best);
  }

  polish(uq, best, best_f, step);

  // gradient of f0 is 2(x - a0); bound it over the box
  double gbound = 0.0;
  for (int j = 0; j < n; ++j)
    gbound += std::pow(std::max(std::fabs(hi[j] - uq.a0[j]), std::fabs(lo[j] - uq.a0[j])), 2);
  gbound = 2.0 * std::sqrt(gbound);

  out.value = best_f;
  out.point = best;
  out.resolution = step * gbound + 1e-9;
  return out;
}

std::vector<Vec> sample_boundary(const CcbInstance& inst, const OracleConfig& cfg) {
  const int n = inst.dim;
  const Vec x0 = oracle_interior_point(inst);
  double reach = 0.0;
  for (const Ball& b : inst.balls) reach = std::max(reach, dist(x0, b.center) + b.radius);
  const double t_cap = 2.0 * reach + 1.0;

  std::vector<Vec> pts;
  pts.reserve(cfg.samples);
  for (int s = 0; s < cfg.samples; ++s) {
    SplitMix64 rng = derived_stream(cfg.seed, static_cast<std::uint64_t>(s));
    const Vec u = random_direction(rng, n);
    double t_lo = 0.0, t_hi = 1e-3;
    Vec x(n);
    auto at = [&](double t) {
      for (int j = 0; j < n; ++j) x[j] = x0[j] + t * u[j];
      return ball_feasible(inst, x, 1e-12);
    };
    while (t_hi < t_cap && at(t_hi)) {
      t_lo = t_hi;
      t_hi *= 2.0;
    }
    for (int b = 0; b < 20; ++b) {
      const double tm = 0.5 * (t_lo + t_hi);
      if (at(tm))
        t_lo = tm;
      else
        t_hi = tm;
    }
    at(t_lo);
    pts.push_back(x);
  }
  return pts;
}

namespace {

struct MecBall {
  Vec center;
  double r2 = -1.0;
  bool valid = false;
};

bool in_ball(const MecBall& b, const Vec& p) {
  if (!b.valid) return false;
  return dist(p, b.center) * dist(p, b.center) <= b.r2 * (1.0 + 1e-12) + 1e-14;
}

// smallest ball with all support points on its boundary, center constrained
// to their affine hull
MecBall ball_from_support(const std::vector<const Vec*>& sup, int n) {
  MecBall b;
  if (sup.empty()) {
    b.center = Vec(n, 0.0);
    b.r2 = 0.0;
    b.valid = true;
    return b;
  }
  const Vec& s0 = *sup[0];
  const int k = static_cast<int>(sup.size()) - 1;
  if (k == 0) {
    b.center = s0;
    b.r2 = 0.0;
    b.valid = true;
    return b;
  }
  std::vector<Vec> v(k);
  Vec rhs(k);
  for (int i = 0; i < k; ++i) {
    v[i] = sub(*sup[i + 1], s0);
    rhs[i] = 0.5 * norm_sq(v[i]);
  }
  std::vector<double> gram(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) gram[i * k + j] = dot(v[i], v[j]);
  LuFactor lu;
  if (!lu.factor(std::move(gram), k, 1e-12)) return b;  // affinely dependent; invalid
  const Vec alpha = lu.solve(rhs);
  b.center = s0;
  for (int i = 0; i < k; ++i) axpy(alpha[i], v[i], b.center);
  b.r2 = 0.0;
  for (int i = 0; i <= k; ++i) b.r2 = std::max(b.r2, norm_sq(sub(*sup[i], b.center)));
  b.valid = true;
  return b;
}

// Welzl's recursion restructured so the recursion depth is bounded by the
// support size (at most n+2 frames); the scan over points is a plain loop.
MecBall welzl_support(const std::vector<const Vec*>& pts, std::size_t m,
                      std::vector<const Vec*>& sup, int n) {
  MecBall b = ball_from_support(sup, n);
  if (!b.valid && sup.size() > 1) {
    std::vector<const Vec*> reduced(sup.begin(), sup.end() - 1);
    b = ball_from_support(reduced, n);
  }
  if (static_cast<int>(sup.size()) == n + 1) return b;
  for (std::size_t j = 0; j < m; ++j) {
    if (b.valid && in_ball(b, *pts[j])) continue;
    sup.push_back(pts[j]);
    b = welzl_support(pts, j, sup, n);
    sup.pop_back();
  }
  return b;
}

}  // namespace

OracleBall oracle_ccb(const CcbInstance& inst, const OracleConfig& cfg) {
  const int n = inst.dim;
  std::vector<Vec> pts = sample_boundary(inst, cfg);

  std::vector<const Vec*> ptrs(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) ptrs[i] = &pts[i];
  SplitMix64 rng(cfg.seed ^ 0xabcdef12345ULL);
  for (std::size_t i = ptrs.size(); i > 1; --i)
    std::swap(ptrs[i - 1], ptrs[rng.next_u64() % i]);

  std::vector<const Vec*> sup;
  MecBall b = welzl_support(ptrs, ptrs.size(), sup, n);

  OracleBall out;
  out.center = b.center;
  out.squared_radius = b.r2;
  const double coverage =
      [&] { const double g = std::pow(4.0 / std::max(8, cfg.samples), 1.0 / std::max(1, n - 1)); return 2.0 * g + g * g + 4e-6; }();
  out.resolution = std::max(1e-9, b.r2 * coverage);
  return out;
}

}  // namespace ccb::oracle
