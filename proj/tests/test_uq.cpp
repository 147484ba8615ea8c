#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ccb/core.hpp"
#include "ccb/io.hpp"
#include "ccb/oracle.hpp"
#include "ccb/rng.hpp"
#include "ccb/uq.hpp"

using namespace ccb;

namespace {

UqInstance alpha_family(double alpha) {
  return {1, {0.5 * alpha}, {{{-0.5}, -4.0}, {{0.5}, 0.0}}};
}

// symmetric 1-D instance with an LP/SDP-to-UQ gap: feasible set [-1, 1],
// v(UQ) = 1, v(LP) = v(SDP) = 2
UqInstance symmetric_gap() { return {1, {0.0}, {{{-0.5}, -2.0}, {{0.5}, -2.0}}}; }

// random UQ derived from a generated ball instance; z inside the center box
UqInstance random_uq(std::uint64_t seed, int n, int p, bool a0_in_hull) {
  const CcbInstance inst = io::gen(n, p, seed);
  SplitMix64 rng(seed ^ 0x5eedULL);
  Vec z(n, 0.0);
  if (a0_in_hull) {
    Vec w(p);
    double sum = 0.0;
    for (double& v : w) {
      v = rng.uniform01() + 1e-3;
      sum += v;
    }
    for (int i = 0; i < p; ++i) axpy(w[i] / sum, inst.balls[i].center, z);
  } else {
    for (double& v : z) v = rng.uniform(-1.5, 1.5);
  }
  return inner_uq(inst, z);
}

}  // namespace

TEST_CASE("duality_conditions: midpoint of two distinct centers leaves a free direction") {
  UqInstance uq{2, {0.5, 0.0}, {{{0.0, 0.0}, -1.0}, {{1.0, 0.0}, -1.0}}};
  const auto rep = duality_conditions(uq);
  CHECK_FALSE(rep.outside_hull);
  CHECK(rep.nontrivial_cone);  // direction orthogonal to the segment
  CHECK(rep.strong_duality_guaranteed);
}

TEST_CASE("duality_conditions: 1-D instance pinched from both sides") {
  const auto rep = duality_conditions(alpha_family(0.0));
  CHECK_FALSE(rep.outside_hull);
  CHECK_FALSE(rep.nontrivial_cone);
  CHECK_FALSE(rep.strong_duality_guaranteed);
}

TEST_CASE("duality_conditions: objective center outside the hull") {
  const auto rep = duality_conditions(alpha_family(2.0));
  CHECK(rep.outside_hull);
  CHECK(rep.strong_duality_guaranteed);
}

TEST_CASE("trichotomy: reference instance lands in the SDP-tight case") {
  const auto res = trichotomy(alpha_family(0.0));
  REQUIRE(res.kind == TrichotomyCase::SdpTight);
  CHECK(res.x[0] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(res.y == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(res.lp_value == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("trichotomy: symmetric gap instance is the LP-equals-SDP case") {
  const auto res = trichotomy(symmetric_gap());
  REQUIRE(res.kind == TrichotomyCase::LpEqualsSdp);
  CHECK(res.x[0] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(res.y == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("trichotomy: single constraint centered at the objective") {
  UqInstance uq{1, {0.0}, {{{0.0}, -1.0}}};
  const auto res = trichotomy(uq);
  REQUIRE(res.kind == TrichotomyCase::LpEqualsSdp);  // pinned vertex x* = 0, y* = 1
  CHECK(res.x[0] == doctest::Approx(0.0));
  CHECK(res.y == doctest::Approx(1.0));
}

TEST_CASE("trichotomy: unbounded passthrough") {
  CHECK(trichotomy(alpha_family(2.0)).kind == TrichotomyCase::Unbounded);
}

TEST_CASE("solve_exact: reference instance, candidate algebra") {
  const UqSolution sol = solve_exact(alpha_family(0.0));
  CHECK(sol.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sol.x[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sol.active_set == std::vector<int>{1});
  CHECK(feasible(alpha_family(0.0), sol.x, 1e-8));
}

TEST_CASE("solve_exact: symmetric instance ties break to the smallest subset") {
  const UqSolution sol = solve_exact(symmetric_gap());
  CHECK(sol.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sol.x[0] == doctest::Approx(1.0).epsilon(1e-10));  // subset {0} pins x = +1
  CHECK(sol.active_set == std::vector<int>{0});
}

TEST_CASE("solve_exact: planar lens with a constraint centered at a0") {
  UqInstance uq{2, {0.0, 0.0}, {{{0.0, 0.0}, -4.0}, {{3.0, 0.0}, 5.0}}};
  const UqSolution sol = solve_exact(uq);
  CHECK(sol.value == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(feasible(uq, sol.x, 1e-8));
  CHECK(uq.f0(sol.x) == doctest::Approx(4.0).epsilon(1e-9));
  // the cap constraint (index 0) must be active
  CHECK(std::find(sol.active_set.begin(), sol.active_set.end(), 0) != sol.active_set.end());
}

TEST_CASE("solve_exact: single ball has the closed-form farthest point") {
  UqInstance uq{3, {1.0, 0.0, 0.0}, {{{2.0, 1.0, 0.0}, 1.0}}};  // ball radius^2 = 5-1 = 4
  const UqSolution sol = solve_exact(uq);
  const double d = dist(uq.a0, uq.constraints[0].a);
  const double radius = std::sqrt(norm_sq(uq.constraints[0].a) - uq.constraints[0].b);
  const double expect = (d + radius) * (d + radius) - norm_sq(uq.a0);
  CHECK(sol.value == doctest::Approx(expect).epsilon(1e-10));
  CHECK(feasible(uq, sol.x, 1e-8));
}

TEST_CASE("solve_exact: all constraints centered at a0") {
  UqInstance uq{2, {1.0, 1.0}, {{{1.0, 1.0}, -2.0}, {{1.0, 1.0}, 0.5}}};
  // caps: ||x-a0||^2 <= 2+2=4 and <= 2-0.5=1.5; optimum on the tighter cap
  const UqSolution sol = solve_exact(uq);
  CHECK(sol.value == doctest::Approx(1.5 - 2.0).epsilon(1e-10));
  CHECK(norm_sq(sub(sol.x, uq.a0)) == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("solve_exact: budget is enforced") {
  UqInstance uq = random_uq(3, 4, 12, false);
  SolveOptions opts;
  opts.budget = 10;
  CHECK_THROWS_AS(solve_exact(uq, opts), SolverError);
}

TEST_CASE("sdp_value: alpha sweep matches the closed form") {
  for (double alpha : {-1.0, -0.5, 0.0, 0.5}) {
    CHECK(sdp_value(alpha_family(alpha)) == doctest::Approx(1.0 - alpha).epsilon(1e-9));
  }
  CHECK(sdp_value(alpha_family(1.0)) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(sdp_value(alpha_family(2.0)) == doctest::Approx(0.0).epsilon(1e-9));  // v(UQ) at alpha=2 is 0 at x=0
}

TEST_CASE("sdp_value: gap instance keeps the LP value") {
  CHECK(sdp_value(symmetric_gap()) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(solve_exact(symmetric_gap()).value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("approx_round: worked 1-D example, every step pinned") {
  const UqInstance uq = symmetric_gap();
  const UqSolution sol = approx_round(uq);
  REQUIRE(sol.certificate == UqCertificate::ApproxRatio);
  CHECK(sol.x[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sol.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sol.upper_bound == doctest::Approx(2.0).epsilon(1e-10));
  const double gamma = 1.0 / 3.0;
  const double ratio = std::pow((1.0 - gamma) / (std::sqrt(2.0) + gamma), 2);
  CHECK(sol.ratio == doctest::Approx(ratio).epsilon(1e-12));
  CHECK(sol.value >= sol.ratio * sol.upper_bound - 1e-7);
  CHECK(feasible(uq, sol.x, 1e-8));
}

TEST_CASE("approx_round: LP-tight instances return the LP point unchanged") {
  // feasible set [-1/2, 1]; LP vertex (1, 1) with y* = x*^2
  UqInstance uq{1, {0.0}, {{{0.25}, -0.5}, {{-0.25}, -1.5}}};
  const UqSolution sol = approx_round(uq);
  CHECK(sol.certificate == UqCertificate::ExactLpTight);
  CHECK(sol.x[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sol.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("approx_round: rejects instances with the origin on a boundary") {
  CHECK_THROWS_AS(approx_round(alpha_family(0.0)), SolverError);  // b_2 = 0
}

TEST_CASE("approx_round: feasible with positive value on recentered instances") {
  int tried = 0;
  for (std::uint64_t seed = 1; seed <= 30 && tried < 8; ++seed) {
    const CcbInstance inst = io::gen(2, 5, seed);
    const InteriorCertificate cert = find_interior_point(inst, 1e-9);
    SplitMix64 rng(seed);
    Vec z(2);
    for (double& v : z) v = rng.uniform(-1.0, 1.0);
    auto [uq, offset] = recenter(inner_uq(inst, z), cert.point);
    const TrichotomyResult t = trichotomy(uq);
    if (t.kind != TrichotomyCase::LpEqualsSdp) continue;
    ++tried;
    const UqSolution sol = approx_round(uq);
    CHECK(feasible(uq, sol.x, 1e-8));
    CHECK(sol.value > 0.0);
    CHECK(sol.value >= sol.ratio * sol.upper_bound - 1e-7);
  }
  CHECK(tried > 0);
}

TEST_CASE("sandwich: enumeration <= sdp <= lp on random instances") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const int n = 1 + static_cast<int>(seed % 3);
    const int p = 2 + static_cast<int>((seed * 7) % 5);
    const UqInstance uq = random_uq(seed, n, p, seed % 2 == 0);
    const double exact = solve_exact(uq).value;
    const double sdp = sdp_value(uq);
    const double scale = std::max({1.0, std::fabs(exact), std::fabs(sdp)});
    CHECK(exact <= sdp + 1e-7 * scale);
    const TrichotomyResult t = trichotomy(uq);
    if (t.kind != TrichotomyCase::Unbounded) CHECK(sdp <= t.lp_value + 1e-7 * scale);
  }
}

TEST_CASE("strong duality holds whenever p <= n") {
  for (std::uint64_t seed = 40; seed <= 60; ++seed) {
    const int n = 2 + static_cast<int>(seed % 4);
    const int p = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(n));
    const UqInstance uq = random_uq(seed, n, p, seed % 3 == 0);
    const double exact = solve_exact(uq).value;
    const double sdp = sdp_value(uq);
    CHECK(sdp == doctest::Approx(exact).epsilon(1e-6));
  }
}

TEST_CASE("strong duality holds whenever the sufficient conditions fire") {
  for (std::uint64_t seed = 70; seed <= 90; ++seed) {
    const int n = 1 + static_cast<int>(seed % 3);
    const int p = 2 + static_cast<int>(seed % 4);
    const UqInstance uq = random_uq(seed, n, p, seed % 2 == 0);
    const auto rep = duality_conditions(uq);
    if (!rep.strong_duality_guaranteed) continue;
    CHECK(sdp_value(uq) == doctest::Approx(solve_exact(uq).value).epsilon(1e-6));
  }
}

TEST_CASE("solve_exact matches the grid oracle on small instances") {
  for (std::uint64_t seed = 100; seed <= 112; ++seed) {
    const int n = 1 + static_cast<int>(seed % 3);
    const int p = 2 + static_cast<int>(seed % 5);
    const UqInstance uq = random_uq(seed, n, p, seed % 2 == 0);
    const UqSolution sol = solve_exact(uq);
    oracle::OracleConfig cfg;
    cfg.grid_step = (n == 3) ? 0.05 : 0.01;
    const auto ov = oracle::oracle_uq(uq, cfg);
    CHECK(sol.value >= ov.value - 1e-6);
    CHECK(sol.value <= ov.value + 5.0 * ov.resolution);
  }
}

TEST_CASE("permutation invariance of values") {
  for (std::uint64_t seed = 120; seed <= 126; ++seed) {
    const int n = 2;
    const int p = 4;
    UqInstance uq = random_uq(seed, n, p, seed % 2 == 0);
    UqInstance perm = uq;
    std::rotate(perm.constraints.begin(), perm.constraints.begin() + 1, perm.constraints.end());
    std::swap(perm.constraints[0], perm.constraints[2]);
    CHECK(solve_exact(perm).value ==
          doctest::Approx(solve_exact(uq).value).epsilon(1e-10));
    CHECK(sdp_value(perm) == doctest::Approx(sdp_value(uq)).epsilon(1e-10));
  }
}

TEST_CASE("parallel and serial enumeration agree exactly") {
  const UqInstance uq = random_uq(7, 3, 30, true);
  SolveOptions serial;
  serial.threads = 1;
  SolveOptions par;
  par.threads = 4;
  const UqSolution a = solve_exact(uq, serial);
  const UqSolution b = solve_exact(uq, par);
  CHECK(a.value == b.value);
  CHECK(a.x == b.x);
  CHECK(a.active_set == b.active_set);
}

// regression: a corner whose two active centers are collinear with a0 (this
// is the generic situation when evaluating the inner problem at a planar
// solution, where the center sits on the line through two ball centers)
TEST_CASE("solve_exact: collinear active centers still yield the corner") {
  UqInstance uq{2,
                {0.0, 0.0},
                {{{-1.0, 0.0}, 1.0 - 1.5 * 1.5},        // ball at (-1,0), radius 1.5
                 {{2.0, 0.0}, 4.0 - 1.6 * 1.6}}};       // ball at (2,0), radius 1.6
  const UqSolution sol = solve_exact(uq);
  // corner: x1 from the radical line of the two circles, x2 from circle 1
  const double x1 = ((1.0 - 1.5 * 1.5) - (4.0 - 1.6 * 1.6)) / (2.0 * (-1.0 - 2.0));
  const double x2sq = 1.5 * 1.5 - (x1 + 1.0) * (x1 + 1.0);
  const double expect = x1 * x1 + x2sq;
  CHECK(sol.value == doctest::Approx(expect).epsilon(1e-10));
  CHECK(feasible(uq, sol.x, 1e-8));
  oracle::OracleConfig cfg;
  cfg.grid_step = 0.002;
  const auto ov = oracle::oracle_uq(uq, cfg);
  CHECK(sol.value >= ov.value - 1e-6);
}

// regression: optimum whose multipliers balance the active centers around
// a0, so stationarity does not confine it to the active span
TEST_CASE("solve_exact: balanced-multiplier optimum in dimension 4") {
  const CcbInstance inst = io::gen(4, 4, 14);
  const Vec z{0.1, -0.2, 0.3, 0.05};
  const UqInstance uq = inner_uq(inst, z);
  const UqSolution sol = solve_exact(uq);
  oracle::OracleConfig cfg;
  cfg.samples = 20000;
  cfg.seed = 14;
  const CcbInstance balls = uq_constraint_balls(uq);
  double direct = -1e300;
  for (const Vec& q : oracle::sample_boundary(balls, cfg))
    direct = std::max(direct, uq.f0(q));
  CHECK(sol.value >= direct - 1e-6);
  CHECK(feasible(uq, sol.x, 1e-8));
}

TEST_CASE("solve_exact: duplicated constraints are tolerated") {
  UqInstance uq{2, {0.3, 0.1}, {{{1.0, 0.5}, -1.0}, {{1.0, 0.5}, -1.0}, {{-0.5, 0.2}, -2.0}}};
  const UqSolution sol = solve_exact(uq);
  UqInstance dedup{2, {0.3, 0.1}, {{{1.0, 0.5}, -1.0}, {{-0.5, 0.2}, -2.0}}};
  CHECK(sol.value == doctest::Approx(solve_exact(dedup).value).epsilon(1e-10));
  CHECK(feasible(uq, sol.x, 1e-8));
}

TEST_CASE("solve_exact: recentering preserves the optimum exactly") {
  for (std::uint64_t seed = 200; seed <= 208; ++seed) {
    const int n = 1 + static_cast<int>(seed % 3);
    const int p = 2 + static_cast<int>(seed % 4);
    const UqInstance uq = random_uq(seed, n, p, false);
    const CcbInstance balls = uq_constraint_balls(uq);
    const InteriorCertificate cert = find_interior_point(balls, 1e-9);
    if (cert.gamma >= 1.0 - 1e-7) continue;
    const auto shifted = recenter(uq, cert.point);
    const double v_orig = solve_exact(uq).value;
    const double v_via = solve_exact(shifted.first).value + shifted.second;
    CHECK(v_orig == doctest::Approx(v_via).epsilon(1e-9));
  }
}

TEST_CASE("solve_exact: wide instance stress (n = 5, p = 40)") {
  const CcbInstance inst = io::gen(5, 40, 7);
  SplitMix64 rng(7);
  Vec z(5);
  for (double& v : z) v = rng.uniform(-1.0, 1.0);
  const UqInstance uq = inner_uq(inst, z);
  const UqSolution sol = solve_exact(uq);
  CHECK(feasible(uq, sol.x, 1e-8));
  // lower-bounded by the best boundary sample, upper-bounded by the LP
  oracle::OracleConfig cfg;
  cfg.samples = 5000;
  cfg.seed = 7;
  double direct = -1e300;
  for (const Vec& q : oracle::sample_boundary(inst, cfg))
    direct = std::max(direct, uq.f0(q));
  CHECK(sol.value >= direct - 1e-6);
  const TrichotomyResult t = trichotomy(uq);
  if (t.kind != TrichotomyCase::Unbounded) CHECK(sol.value <= t.lp_value + 1e-7);
}
