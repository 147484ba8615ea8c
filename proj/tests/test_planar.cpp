#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ccb/ccb.hpp"
#include "ccb/core.hpp"
#include "ccb/io.hpp"
#include "ccb/oracle.hpp"
#include "ccb/planar.hpp"

using namespace ccb;
using namespace ccb::planar;

namespace {

CcbInstance two_unit_balls(double gap = 1.0) {
  return {2, {{{0.0, 0.0}, 1.0}, {{gap, 0.0}, 1.0}}};
}

bool near(const Vec& a, double x, double y, double tol) {
  return std::fabs(a[0] - x) <= tol && std::fabs(a[1] - y) <= tol;
}

}  // namespace

TEST_CASE("arc_decomposition: lens of two unit circles") {
  const ArcSet arcs = arc_decomposition(two_unit_balls());
  REQUIRE(arcs.per_circle.size() == 2);
  CHECK(arcs.pair_evaluations == 1);
  for (int i = 0; i < 2; ++i) {
    REQUIRE(arcs.per_circle[i].arcs.size() == 1);
    const Arc& a = arcs.per_circle[i].arcs[0];
    CHECK(a.span == doctest::Approx(2.0 * std::acos(0.5)).epsilon(1e-12));
    const double s = std::sqrt(3.0) / 2.0;
    const bool ok = (near(a.first, 0.5, -s, 1e-9) && near(a.second, 0.5, s, 1e-9)) ||
                    (near(a.first, 0.5, s, 1e-9) && near(a.second, 0.5, -s, 1e-9));
    CHECK(ok);
  }
}

TEST_CASE("arc_decomposition: containment marks circles full or dead") {
  // second ball strictly inside the first
  CcbInstance inst{2, {{{0.0, 0.0}, 3.0}, {{0.5, 0.0}, 1.0}}};
  const ArcSet arcs = arc_decomposition(inst);
  CHECK(arcs.per_circle[0].dead);          // outer circle is outside the small ball
  CHECK(arcs.per_circle[1].full_circle);   // inner circle is entirely boundary
}

TEST_CASE("arc_decomposition: equilateral triple keeps interior corners") {
  const double h = std::sqrt(3.0) / 2.0;
  CcbInstance inst{2, {{{0.0, 0.0}, 1.0}, {{1.0, 0.0}, 1.0}, {{0.5, h}, 1.0}}};
  const ArcSet arcs = arc_decomposition(inst);
  std::vector<Vec> endpoints;
  for (int i = 0; i < 3; ++i) {
    REQUIRE(arcs.per_circle[i].arcs.size() == 1);
    endpoints.push_back(arcs.per_circle[i].arcs[0].first);
    endpoints.push_back(arcs.per_circle[i].arcs[0].second);
  }
  // every endpoint satisfies all three constraints
  for (const Vec& e : endpoints)
    for (const Ball& b : inst.balls) CHECK(dist(e, b.center) <= b.radius + 1e-8);
}

TEST_CASE("major_arc_shortcut: contained ball wins") {
  CcbInstance inst{2, {{{0.0, 0.0}, 3.0}, {{0.5, 0.0}, 1.0}}};
  const auto sol = major_arc_shortcut(arc_decomposition(inst), inst);
  REQUIRE(sol.has_value());
  CHECK(sol->squared_radius == doctest::Approx(1.0));
  CHECK(near(sol->center, 0.5, 0.0, 1e-12));
}

TEST_CASE("major_arc_shortcut: lens arcs of 120 degrees do not fire") {
  CHECK_FALSE(major_arc_shortcut(arc_decomposition(two_unit_balls()), two_unit_balls()).has_value());
}

TEST_CASE("major_arc_shortcut: nearly coincident circles straddle the rule boundary") {
  const CcbInstance inst = two_unit_balls(1e-6);
  const ArcSet arcs = arc_decomposition(inst);
  // spans sit just below pi, so the shortcut must not fire...
  for (const Arc& a : arcs.per_circle[0].arcs) CHECK(a.span < 3.14159266);
  CHECK_FALSE(major_arc_shortcut(arcs, inst).has_value());
  // ...but the endpoint route still recovers the right ball
  const CcbSolution sol = solve_planar(inst);
  CHECK(sol.squared_radius == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("welzl: degenerate inputs") {
  CHECK(welzl({}, 1).radius == 0.0);
  const Circle one = welzl({{2.0, 3.0}}, 1);
  CHECK(one.radius == 0.0);
  CHECK(near(one.center, 2.0, 3.0, 0.0));
  const Circle two = welzl({{0.0, 0.0}, {2.0, 0.0}}, 1);
  CHECK(two.radius == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(near(two.center, 1.0, 0.0, 1e-12));
}

TEST_CASE("welzl: equilateral triangle circumradius") {
  const double h = std::sqrt(3.0) / 2.0;
  const Circle c = welzl({{0.0, 0.0}, {1.0, 0.0}, {0.5, h}}, 7);
  CHECK(c.radius == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("welzl: collinear and duplicate points") {
  const Circle c = welzl({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {1.0, 0.0}}, 3);
  CHECK(c.radius == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(near(c.center, 1.0, 0.0, 1e-9));
}

TEST_CASE("welzl: result is seed independent") {
  std::vector<Vec> pts;
  for (int i = 0; i < 60; ++i)
    pts.push_back({std::cos(0.1 * i) * (1.0 + 0.01 * (i % 7)), std::sin(0.13 * i)});
  const Circle a = welzl(pts, 1);
  const Circle b = welzl(pts, 999);
  CHECK(a.radius == doctest::Approx(b.radius).epsilon(1e-12));
  CHECK(dist(a.center, b.center) < 1e-10);
}

TEST_CASE("solve_planar: lens golden test") {
  const CcbSolution sol = solve_planar(two_unit_balls());
  CHECK(near(sol.center, 0.5, 0.0, 1e-8));
  CHECK(sol.squared_radius == doctest::Approx(0.75).epsilon(1e-8));
  CHECK_FALSE(sol.fallback_used);
}

TEST_CASE("solve_planar: single ball returns itself") {
  CcbInstance inst{2, {{{0.3, -0.2}, 1.7}}};
  const CcbSolution sol = solve_planar(inst);
  CHECK(near(sol.center, 0.3, -0.2, 1e-12));
  CHECK(sol.squared_radius == doctest::Approx(1.7 * 1.7));
}

TEST_CASE("solve_planar: embedded 1-D reference pair hits the contained ball") {
  CcbInstance inst{2, {{{-0.5, 0.0}, std::sqrt(4.25)}, {{0.5, 0.0}, 0.5}}};
  const CcbSolution sol = solve_planar(inst);
  CHECK(near(sol.center, 0.5, 0.0, 1e-9));
  CHECK(sol.squared_radius == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("solve_planar: pair evaluation count and endpoint soundness") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const int p = 2 + static_cast<int>(seed % 7);
    const CcbInstance inst = io::gen(2, p, seed);
    validate(inst);
    PlanarStats stats;
    const CcbSolution sol = solve_planar(inst, {}, &stats);
    CHECK(stats.pair_evaluations == static_cast<long long>(p) * (p - 1) / 2);
    CHECK_FALSE(sol.fallback_used);
    const ArcSet arcs = arc_decomposition(inst);
    for (int i = 0; i < p; ++i)
      for (const Arc& a : arcs.per_circle[i].arcs)
        for (const Vec* e : {&a.first, &a.second}) {
          CHECK(std::fabs(dist(*e, inst.balls[i].center) - inst.balls[i].radius) <=
                1e-9 * std::max(1.0, inst.balls[i].radius));
          for (const Ball& b : inst.balls) CHECK(dist(*e, b.center) <= b.radius + 1e-8);
        }
  }
}

TEST_CASE("solve_planar agrees with the sampling oracle and the ellipsoid") {
  for (std::uint64_t seed = 20; seed <= 27; ++seed) {
    const int p = 2 + static_cast<int>(seed % 5);
    const CcbInstance inst = io::gen(2, p, seed);
    validate(inst);
    const CcbSolution sol = solve_planar(inst);
    oracle::OracleConfig cfg;
    cfg.samples = 4000;
    const auto ob = oracle::oracle_ccb(inst, cfg);
    CHECK(sol.squared_radius >= ob.squared_radius - 1e-9);  // samples lie inside
    CHECK(sol.squared_radius <= ob.squared_radius + std::max(2e-3, ob.resolution));
    CcbEllipsoidOptions opts;
    opts.eps = 1e-5;
    const CcbSolution ell = solve_ccb_ellipsoid(inst, opts);
    CHECK(std::fabs(sol.squared_radius - ell.squared_radius) <= 2e-5);
  }
}

TEST_CASE("solve_planar: returned ball covers boundary samples") {
  const CcbInstance inst = io::gen(2, 6, 77);
  validate(inst);
  const CcbSolution sol = solve_planar(inst);
  oracle::OracleConfig cfg;
  cfg.samples = 10000;
  const auto pts = oracle::sample_boundary(inst, cfg);
  const double r = std::sqrt(sol.squared_radius);
  for (const Vec& ptv : pts) CHECK(dist(ptv, sol.center) <= r + 1e-7);
}

TEST_CASE("solve_planar: rejects non-planar instances") {
  CcbInstance inst{3, {{{0.0, 0.0, 0.0}, 1.0}}};
  CHECK_THROWS_AS(solve_planar(inst), SolverError);
}

TEST_CASE("solve_planar: duplicated and tangent configurations") {
  // exact duplicates: the shared circle is the whole boundary
  CcbInstance dup{2, {{{0.2, -0.1}, 1.3}, {{0.2, -0.1}, 1.3}}};
  const CcbSolution sol = solve_planar(dup);
  CHECK(sol.squared_radius == doctest::Approx(1.69).epsilon(1e-9));
  CHECK(near(sol.center, 0.2, -0.1, 1e-9));
}

TEST_CASE("solve_planar: translation equivariance") {
  const CcbInstance inst = io::gen(2, 5, 31);
  validate(inst);
  const CcbSolution base = solve_planar(inst);
  CcbInstance moved = inst;
  const Vec d{102.5, -47.25};
  for (Ball& b : moved.balls) b.center = add(b.center, d);
  const CcbSolution shifted = solve_planar(moved);
  CHECK(shifted.squared_radius == doctest::Approx(base.squared_radius).epsilon(1e-9));
  CHECK(dist(shifted.center, add(base.center, d)) < 1e-7);
}
