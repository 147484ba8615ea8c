#include "ccb/uq.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "ccb/core.hpp"

namespace ccb {

namespace {

constexpr double kFeasRel = 1e-8;  // candidates sit exactly on boundaries

// lexicographic k-subset iterator over {0..m-1}
struct Combinations {
  int m, k;
  std::vector<int> idx;
  bool valid;

  Combinations(int m_, int k_) : m(m_), k(k_), valid(k_ <= m_ && k_ >= 0) {
    idx.resize(std::max(k, 0));
    for (int i = 0; i < k; ++i) idx[i] = i;
  }

  bool next() {
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) {
      valid = false;
      return false;
    }
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    return true;
  }
};

double binom_capped(int m, int k) {
  if (k < 0 || k > m) return 0.0;
  double r = 1.0;
  for (int i = 0; i < k; ++i) {
    r *= static_cast<double>(m - i) / (i + 1);
    if (r > 1e18) return 1e18;
  }
  return r;
}

struct Candidate {
  bool valid = false;
  double z = 0.0;
  Vec v;      // reduced coordinates
  double sigma = 0.0;
  std::vector<int> subset;  // original constraint indices, ascending
  int root = 0;
};

// total order: larger z wins, then lexicographically smaller subset, then
// smaller root index
bool better(const Candidate& a, const Candidate& b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  if (a.z != b.z) return a.z > b.z;
  if (a.subset != b.subset)
    return std::lexicographical_compare(a.subset.begin(), a.subset.end(), b.subset.begin(),
                                        b.subset.end());
  return a.root < b.root;
}

struct Reduced {
  int n = 0, p = 0, r = 0;
  std::vector<Vec> q;        // orthonormal basis of span{c_i}, r vectors in R^n
  std::vector<Vec> ct;       // reduced rows, p entries (zero rows for caps)
  Vec phi;                   // f_i(a0)
  std::vector<int> nonzero;  // indices with c_i != 0, ascending
  std::vector<int> caps;     // indices with a_i == a0, ascending
  Vec a0;
  double a0_sq = 0.0;
};

Reduced reduce(const UqInstance& uq) {
  Reduced red;
  red.n = uq.dim;
  red.p = uq.p();
  red.a0 = uq.a0;
  red.a0_sq = norm_sq(uq.a0);
  red.phi.resize(red.p);
  std::vector<Vec> c(red.p);
  double cscale = 1.0;
  for (int i = 0; i < red.p; ++i) {
    c[i] = sub(uq.constraints[i].a, uq.a0);
    red.phi[i] = uq.fi(i, uq.a0);
    cscale = std::max(cscale, norm(c[i]));
  }
  const double zero_tol = 1e-12 * cscale;
  std::vector<Vec> rows;
  for (int i = 0; i < red.p; ++i) {
    if (norm(c[i]) <= zero_tol)
      red.caps.push_back(i);
    else
      red.nonzero.push_back(i);
  }
  for (int i : red.nonzero) rows.push_back(c[i]);
  red.q = orthonormal_basis(rows, 1e-10);
  red.r = static_cast<int>(red.q.size());
  red.ct.assign(red.p, Vec(red.r, 0.0));
  for (int i : red.nonzero)
    for (int k = 0; k < red.r; ++k) red.ct[i][k] = dot(red.q[k], c[i]);
  return red;
}

double feas_tol(const Reduced& red, int i, double z) {
  return kFeasRel * std::max({1.0, std::fabs(red.phi[i]), std::fabs(z)});
}

// checks z - 2 ct_i'v + phi_i <= tol for every constraint
bool reduced_feasible(const Reduced& red, const Vec& v, double z) {
  for (int i = 0; i < red.p; ++i) {
    const double slack = z - 2.0 * dot(red.ct[i], v) + red.phi[i];
    if (slack > feas_tol(red, i, z)) return false;
  }
  return true;
}

// deterministic unit vector orthogonal to the given orthonormal set
bool unit_orthogonal(const std::vector<Vec>& basis, int dim, Vec& out) {
  for (int k = 0; k < dim; ++k) {
    Vec v(dim, 0.0);
    v[k] = 1.0;
    for (const Vec& q : basis) axpy(-dot(q, v), q, v);
    const double nv = norm(v);
    if (nv > 1e-6) {
      out = scaled(v, 1.0 / nv);
      return true;
    }
  }
  return false;
}

// Stationary-point route for active sets of any size k <= r. At an optimum
// of max ||w||^2 with active rows J and multipliers not summing to one, w
// lies in span{c_j : j in J}; the k active equations there reduce to k-1
// linear differences plus one quadric along the left-over line. With the
// Gram matrix G = [c_i'c_j], the line is
//   w(t) = sum_j alpha_j c_j + t * u,  alpha = G^{-1} phi_J / 2,
//   u = normalized sum_j (G^{-1} 1)_j c_j,
// and t solves a scalar quadratic. Covers both smooth boundary maxima
// (k < n) and the generic corner case k = n.
struct SubsetWorkspace {
  std::vector<double> diff;  // (k-1) x r orthonormalized difference rows
  Vec drhs;                  // transformed right-hand sides
  Vec w0, u, v, w1;
  std::vector<int> orig;

  void resize(int k, int r) {
    diff.resize(static_cast<std::size_t>(std::max(k - 1, 0)) * r);
    drhs.resize(std::max(k - 1, 0));
    w0.assign(r, 0.0);
    u.assign(r, 0.0);
    v.resize(r);
    w1.resize(r);
    orig.resize(k);
  }
};

// Intersects the line w(t) = w0 + t*u with the sphere equation of row j0
// and turns feasible roots into candidates (sigma = 0).
void line_quadric_candidates(const Reduced& red, const Vec& w0, const Vec& u,
                             const std::vector<int>& orig, Vec& scratch, Candidate& best) {
  const Vec& c1 = red.ct[orig[0]];
  const double bq = dot(w0, u) - dot(c1, u);
  const double cq = norm_sq(w0) - 2.0 * dot(c1, w0) + red.phi[orig[0]];
  const double disc = bq * bq - cq;
  if (disc < 0.0 || !std::isfinite(disc)) return;
  const double sq = std::sqrt(disc);
  double roots[2] = {-bq + sq, -bq - sq};
  {
    // order the two candidates by descending z = ||w0 + t u||^2
    const double z0 = norm_sq(w0) + 2.0 * roots[0] * dot(w0, u) + roots[0] * roots[0];
    const double z1 = norm_sq(w0) + 2.0 * roots[1] * dot(w0, u) + roots[1] * roots[1];
    if (z1 > z0) std::swap(roots[0], roots[1]);
  }
  const int nroots = (roots[0] == roots[1]) ? 1 : 2;
  for (int ri = 0; ri < nroots; ++ri) {
    scratch = w0;
    axpy(roots[ri], u, scratch);
    const double z = norm_sq(scratch);
    if (!std::isfinite(z)) continue;
    if (best.valid && z < best.z) continue;  // cannot improve; skip the feasibility scan
    if (!reduced_feasible(red, scratch, z)) continue;
    Candidate cand;
    cand.valid = true;
    cand.z = z;
    cand.v = scratch;
    cand.sigma = 0.0;
    cand.subset = orig;
    std::sort(cand.subset.begin(), cand.subset.end());
    cand.root = ri;
    if (better(cand, best)) best = std::move(cand);
  }
}

// Candidates for one active set J of size k (1 <= k <= r). On the active
// manifold M = {pairwise sphere differences} cap {first sphere}, which is a
// sphere slice centered at the projection of c_1 onto the difference
// solution space, ||w||^2 = 2 c_1'w - phi_1 is linear, so its extrema over
// M sit on the line through the slice center along the in-slice component
// of c_1. This one construction covers smooth boundary maxima, corners
// (including dependent centers, which occur systematically when the
// objective center is collinear with two ball centers), and optima whose
// multipliers balance the active centers around the origin.
void route_active_set(const Reduced& red, const std::vector<int>& positions, int k,
                      SubsetWorkspace& ws, Candidate& best) {
  const int r = red.r;
  ws.resize(k, r);
  for (int t = 0; t < k; ++t) ws.orig[t] = red.nonzero[positions[t]];

  // difference rows, orthonormalized in place with the rhs carried along,
  // so the system reads Q w = y and the min-norm solution is Q'y
  const Vec& c0 = red.ct[ws.orig[0]];
  for (int t = 1; t < k; ++t) {
    double* row = ws.diff.data() + static_cast<std::size_t>(t - 1) * r;
    const Vec& ct = red.ct[ws.orig[t]];
    for (int j = 0; j < r; ++j) row[j] = ct[j] - c0[j];
    ws.drhs[t - 1] = 0.5 * (red.phi[ws.orig[t]] - red.phi[ws.orig[0]]);
  }
  for (int i = 0; i < k - 1; ++i) {
    double* ri = ws.diff.data() + static_cast<std::size_t>(i) * r;
    double orig_norm = 0.0;
    for (int j = 0; j < r; ++j) orig_norm += ri[j] * ri[j];
    orig_norm = std::sqrt(orig_norm);
    for (int l = 0; l < i; ++l) {
      const double* rl = ws.diff.data() + static_cast<std::size_t>(l) * r;
      double proj = 0.0;
      for (int j = 0; j < r; ++j) proj += rl[j] * ri[j];
      for (int j = 0; j < r; ++j) ri[j] -= proj * rl[j];
      ws.drhs[i] -= proj * ws.drhs[l];
    }
    double nn = 0.0;
    for (int j = 0; j < r; ++j) nn += ri[j] * ri[j];
    nn = std::sqrt(nn);
    // dependent difference rows: a smaller subset covers this configuration
    if (nn <= 1e-10 * std::max(orig_norm, 1e-30)) return;
    for (int j = 0; j < r; ++j) ri[j] /= nn;
    ws.drhs[i] /= nn;
  }

  // slice center: min-norm difference solution plus the left-over part of c_1
  ws.u = c0;
  for (int i = 0; i < k - 1; ++i) {
    const double* ri = ws.diff.data() + static_cast<std::size_t>(i) * r;
    double proj = 0.0;
    for (int j = 0; j < r; ++j) proj += ri[j] * ws.u[j];
    for (int j = 0; j < r; ++j) ws.u[j] -= proj * ri[j];
  }
  ws.w0.assign(r, 0.0);
  for (int i = 0; i < k - 1; ++i) {
    const double* ri = ws.diff.data() + static_cast<std::size_t>(i) * r;
    for (int j = 0; j < r; ++j) ws.w0[j] += ws.drhs[i] * ri[j];
  }
  const double un = norm(ws.u);
  double cscale = 1.0;
  for (int t = 0; t < k; ++t) cscale = std::max(cscale, norm(red.ct[ws.orig[t]]));
  if (un > 1e-12 * cscale) {
    for (double& x : ws.u) x /= un;
  } else {
    // the objective is constant on the slice: take a deterministic direction
    // for the representative pair
    bool have_u = false;
    for (int cand = 0; cand < r && !have_u; ++cand) {
      for (int j = 0; j < r; ++j) ws.u[j] = (j == cand) ? 1.0 : 0.0;
      for (int i = 0; i < k - 1; ++i) {
        const double* ri = ws.diff.data() + static_cast<std::size_t>(i) * r;
        double proj = 0.0;
        for (int j = 0; j < r; ++j) proj += ri[j] * ws.u[j];
        for (int j = 0; j < r; ++j) ws.u[j] -= proj * ri[j];
      }
      const double nn = norm(ws.u);
      if (nn > 1e-6) {
        for (double& x : ws.u) x /= nn;
        have_u = true;
      }
    }
    if (!have_u) return;
  }
  // anchor at the slice center (the projection of c_1 onto the affine
  // slice), which keeps the quadratic well conditioned
  axpy(dot(c0, ws.u), ws.u, ws.w0);

  line_quadric_candidates(red, ws.w0, ws.u, ws.orig, ws.w1, best);
}

// linearization vertices (r+1 active rows), lifted with the spare norm
// budget; only meaningful when r < n
void route_vertex(const Reduced& red, const std::vector<int>& subset, Candidate& best) {
  const int r = red.r;
  const int k = r + 1;
  std::vector<double> m(static_cast<std::size_t>(k) * k);
  Vec rhs(k);
  for (int t = 0; t < k; ++t) {
    const int i = subset[t];
    m[t * k + 0] = 1.0;
    for (int j = 0; j < r; ++j) m[t * k + 1 + j] = -2.0 * red.ct[i][j];
    rhs[t] = -red.phi[i];
  }
  LuFactor lu;
  if (!lu.factor(std::move(m), k, 1e-10)) return;
  const Vec sol = lu.solve(rhs);
  const double z_sys = sol[0];
  Vec v(sol.begin() + 1, sol.end());
  const double vsq = norm_sq(v);
  if (z_sys < vsq - kFeasRel * std::max(1.0, std::fabs(z_sys))) return;
  const double sigma2 = std::max(0.0, z_sys - vsq);
  const double z = vsq + sigma2;
  if (!reduced_feasible(red, v, z)) return;
  Candidate cand;
  cand.valid = true;
  cand.z = z;
  cand.v = std::move(v);
  cand.sigma = std::sqrt(sigma2);
  cand.subset = subset;
  cand.root = 0;
  if (better(cand, best)) best = std::move(cand);
}

// cap route: some a_i coincides with a0 and bounds z directly; candidates on
// the cap sphere from j <= r active rows completed by the minimum-norm
// solution (plus a null direction when the norm must be met exactly)
void route_cap(const Reduced& red, double z_cap, int cap_idx, const std::vector<int>& positions,
               Candidate& best) {
  const int r = red.r;
  const int j = static_cast<int>(positions.size());
  std::vector<Vec> rows(j);
  Vec rhs(j);
  std::vector<int> orig(j);
  for (int t = 0; t < j; ++t) {
    orig[t] = red.nonzero[positions[t]];
    rows[t] = scaled(red.ct[orig[t]], 2.0);
    rhs[t] = z_cap + red.phi[orig[t]];
  }
  Vec v0(r, 0.0);
  if (!min_norm_solve(rows, rhs, v0)) return;
  const double v0sq = norm_sq(v0);
  const double tol = kFeasRel * std::max(1.0, std::fabs(z_cap));
  if (v0sq > z_cap + tol) return;

  auto try_point = [&](Vec v, int root) {
    const double vsq = norm_sq(v);
    const double sigma2 = std::max(0.0, z_cap - vsq);
    if (red.r == red.n && sigma2 > tol) return;  // no spare dimension to absorb the gap
    if (!reduced_feasible(red, v, z_cap)) return;
    Candidate cand;
    cand.valid = true;
    cand.z = z_cap;
    cand.v = std::move(v);
    cand.sigma = (red.r < red.n) ? std::sqrt(sigma2) : 0.0;
    cand.subset = orig;
    cand.subset.push_back(cap_idx);
    std::sort(cand.subset.begin(), cand.subset.end());
    cand.root = root;
    if (better(cand, best)) best = std::move(cand);
  };

  if (red.r < red.n) {
    try_point(v0, 0);
    return;
  }
  // r == n: the norm must hit z_cap exactly; move along a null direction
  if (j == r) {
    try_point(v0, 0);
    return;
  }
  std::vector<Vec> row_basis = orthonormal_basis(rows, 1e-10);
  Vec u;
  if (!unit_orthogonal(row_basis, r, u)) return;
  const double t = std::sqrt(std::max(0.0, z_cap - v0sq));
  Vec vp = v0, vm = v0;
  axpy(t, u, vp);
  axpy(-t, u, vm);
  try_point(std::move(vp), 0);
  try_point(std::move(vm), 1);
}

}  // namespace

DualityConditionReport duality_conditions(const UqInstance& uq) {
  DualityConditionReport rep;
  rep.outside_hull = (uq_dlp(uq).status == LpStatus::Infeasible);

  const int n = uq.dim;
  rep.nontrivial_cone = false;
  for (int j = 0; j < n && !rep.nontrivial_cone; ++j) {
    for (int sgn : {+1, -1}) {
      LpProblem prob;
      prob.n = n;
      prob.objective.assign(n, 0.0);
      prob.objective[j] = sgn;
      prob.free_var.assign(n, true);
      for (int i = 0; i < uq.p(); ++i) {
        LpRow row;
        row.coeffs = sub(uq.constraints[i].a, uq.a0);
        row.sense = Sense::Ge;
        row.rhs = 0.0;
        prob.rows.push_back(std::move(row));
      }
      LpRow cap;
      cap.coeffs.assign(n, 0.0);
      cap.coeffs[j] = sgn;
      cap.sense = Sense::Le;
      cap.rhs = 1.0;
      prob.rows.push_back(std::move(cap));
      const LpOutcome out = simplex(prob);
      if (out.status == LpStatus::Optimal && out.value > 0.5) {
        rep.nontrivial_cone = true;
        break;
      }
    }
  }
  rep.strong_duality_guaranteed = rep.outside_hull || rep.nontrivial_cone;
  return rep;
}

TrichotomyResult trichotomy(const UqInstance& uq) {
  TrichotomyResult res;
  const LpOutcome out = uq_lp(uq);
  if (out.status == LpStatus::Unbounded) {
    res.kind = TrichotomyCase::Unbounded;
    return res;
  }
  if (out.status != LpStatus::Optimal)
    throw SolverError(ErrorCode::NumericalFailure, "uq_lp returned Infeasible");
  res.x = lp_point_x(out, uq.dim);
  res.y = lp_point_y(out, uq.dim);
  res.lp_value = out.value;
  const double s = res.y - norm_sq(res.x);
  const double tol = 1e-9 * std::max(1.0, std::fabs(res.y));
  if (std::fabs(s) <= tol)
    res.kind = TrichotomyCase::LpTight;
  else if (s < 0.0)
    res.kind = TrichotomyCase::SdpTight;
  else
    res.kind = TrichotomyCase::LpEqualsSdp;
  return res;
}

UqSolution solve_exact(const UqInstance& uq, const SolveOptions& opts) {
  if (static_cast<int>(uq.a0.size()) != uq.dim)
    throw SolverError(ErrorCode::DimensionMismatch, "a0 dimension mismatch");
  const Reduced red = reduce(uq);
  const int nz = static_cast<int>(red.nonzero.size());

  double stationary_work = 0.0;
  for (int k = 1; k <= red.r; ++k) stationary_work += binom_capped(nz, k);
  double planned = stationary_work + 1.0;
  if (red.r < red.n) planned += binom_capped(red.p, red.r + 1);
  if (!red.caps.empty())
    for (int j = 0; j <= red.r; ++j) planned += binom_capped(nz, j);
  if (planned > static_cast<double>(opts.budget))
    throw SolverError(ErrorCode::BudgetExceeded,
                      "enumeration needs ~" + std::to_string(planned) + " subsets");

  Candidate best;

  // the origin of the centered problem is the valid last resort when the
  // feasible set degenerates to {a0}
  {
    Vec v(red.r, 0.0);
    if (reduced_feasible(red, v, 0.0)) {
      best.valid = true;
      best.z = 0.0;
      best.v = std::move(v);
    }
  }

  // stationary route over all active-set sizes, optionally striped across
  // threads (the candidate order is total, so the result is schedule
  // independent)
  int nthreads = opts.threads;
  if (nthreads <= 0) nthreads = static_cast<int>(std::thread::hardware_concurrency());
  if (nthreads < 1) nthreads = 1;
  if (stationary_work < 2048) nthreads = 1;
  if (red.r > 0 && nz > 0) {
    auto sweep = [&](int stride, int offset, Candidate& into) {
      SubsetWorkspace ws;
      long long ordinal = 0;
      for (int k = 1; k <= std::min(red.r, nz); ++k)
        for (Combinations comb(nz, k); comb.valid; comb.next(), ++ordinal)
          if (ordinal % stride == offset) route_active_set(red, comb.idx, k, ws, into);
    };
    if (nthreads == 1) {
      sweep(1, 0, best);
    } else {
      std::vector<Candidate> local(nthreads);
      std::vector<std::thread> pool;
      for (int t = 0; t < nthreads; ++t)
        pool.emplace_back([&, t]() { sweep(nthreads, t, local[t]); });
      for (auto& th : pool) th.join();
      for (const Candidate& c : local)
        if (better(c, best)) best = c;
    }
  }

  if (red.r < red.n) {
    for (Combinations comb(red.p, red.r + 1); comb.valid; comb.next())
      route_vertex(red, comb.idx, best);
  }

  if (!red.caps.empty()) {
    double z_cap = -red.phi[red.caps[0]];
    int cap_idx = red.caps[0];
    for (int i : red.caps)
      if (-red.phi[i] < z_cap) {
        z_cap = -red.phi[i];
        cap_idx = i;
      }
    if (z_cap >= -kFeasRel * std::max(1.0, std::fabs(z_cap))) {
      for (int j = 0; j <= std::min(red.r, nz); ++j)
        for (Combinations comb(nz, j); comb.valid; comb.next())
          route_cap(red, std::max(z_cap, 0.0), cap_idx, comb.idx, best);
    }
  }

  if (!best.valid)
    throw SolverError(ErrorCode::NoCandidate,
                      "enumeration produced no feasible candidate (degenerate instance); "
                      "cross-check with the grid oracle");

  UqSolution sol;
  sol.x = red.a0;
  for (int k = 0; k < red.r; ++k) axpy(best.v[k], red.q[k], sol.x);
  if (best.sigma > 0.0) {
    Vec u;
    if (!unit_orthogonal(red.q, red.n, u))
      throw SolverError(ErrorCode::NumericalFailure, "no orthogonal direction for lift");
    axpy(best.sigma, u, sol.x);
  }
  sol.value = best.z - red.a0_sq;
  sol.upper_bound = sol.value;
  sol.certificate = UqCertificate::ExactEnumeration;
  sol.active_set = best.subset;
  sol.root_index = best.root;
  return sol;
}

double sdp_value(const UqInstance& uq, const SolveOptions& opts) {
  const TrichotomyResult t = trichotomy(uq);
  if (t.kind == TrichotomyCase::Unbounded || t.kind == TrichotomyCase::SdpTight)
    return solve_exact(uq, opts).value;
  return t.lp_value;
}

UqSolution approx_round(const UqInstance& uq, const SolveOptions& opts) {
  for (const UqConstraint& c : uq.constraints)
    if (!(c.b < 0.0))
      throw SolverError(ErrorCode::PreconditionViolated,
                        "approx_round needs the origin strictly interior (all b_i < 0)");

  const TrichotomyResult t = trichotomy(uq);
  if (t.kind == TrichotomyCase::Unbounded || t.kind == TrichotomyCase::SdpTight)
    return solve_exact(uq, opts);
  if (t.kind == TrichotomyCase::LpTight) {
    UqSolution sol;
    sol.x = t.x;
    sol.value = uq.f0(t.x);
    sol.upper_bound = t.lp_value;
    sol.certificate = UqCertificate::ExactLpTight;
    return sol;
  }

  const int n = uq.dim;
  const Vec& xs = t.x;
  const double tsq = t.y - norm_sq(xs);  // > 0 in this branch

  // t = sqrt(y* - x*'x*) e1, falling back to e2 if the beta quadratic
  // degenerates
  Vec xbar;
  for (int dir = 0; dir < std::max(1, std::min(n, 2)); ++dir) {
    Vec tv(n, 0.0);
    tv[dir] = std::sqrt(tsq);
    const double aq = tsq;
    if (aq < 1e-14 && dir + 1 < n) continue;
    const double q = dot(tv, xs) - dot(tv, uq.a0);
    const double beta = (-q + std::sqrt(q * q + aq * aq)) / aq;
    const double u1 = 1.0 / std::sqrt(1.0 + beta * beta);
    const double u2 = beta / std::sqrt(1.0 + beta * beta);
    Vec w1 = scaled(xs, 1.0);  // s1/u1 = x* + (u2/u1) t
    axpy(u2 / u1, tv, w1);
    Vec w2 = scaled(xs, 1.0);  // s2/u2 = x* - (u1/u2) t
    axpy(-u1 / u2, tv, w2);
    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i < uq.p(); ++i) {
      const double rho =
          1.0 / std::sqrt(-uq.constraints[i].b + norm_sq(uq.constraints[i].a));
      m1 = std::max(m1, rho * dist(w1, uq.constraints[i].a));
      m2 = std::max(m2, rho * dist(w2, uq.constraints[i].a));
    }
    xbar = (m1 <= m2) ? w1 : w2;
    if (dot(uq.a0, xbar) > 0.0)
      for (double& v : xbar) v = -v;
    break;
  }

  const double xbsq = norm_sq(xbar);
  double tau = 1.0;
  if (xbsq > 1e-300) {
    for (int i = 0; i < uq.p(); ++i) {
      const double ax = dot(uq.constraints[i].a, xbar);
      const double root = (ax + std::sqrt(ax * ax - uq.constraints[i].b * xbsq)) / xbsq;
      tau = std::min(tau, root);
    }
    tau = std::max(tau, 0.0);
  }

  UqSolution sol;
  sol.x = scaled(xbar, tau);
  sol.value = uq.f0(sol.x);
  sol.upper_bound = t.lp_value;
  sol.certificate = UqCertificate::ApproxRatio;
  double gamma = 0.0;
  for (const UqConstraint& c : uq.constraints)
    gamma = std::max(gamma, norm(c.a) / std::sqrt(-c.b + norm_sq(c.a)));
  const double h = (1.0 - gamma) / (std::sqrt(2.0) + gamma);
  sol.ratio = h * h;
  return sol;
}

}  // namespace ccb
