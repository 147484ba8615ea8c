#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ccb/core.hpp"
#include "ccb/io.hpp"
#include "ccb/oracle.hpp"

using namespace ccb;
using oracle::OracleConfig;

TEST_CASE("oracle_uq: 1-D reference instance peaks at 1") {
  UqInstance uq{1, {0.0}, {{{-0.5}, -4.0}, {{0.5}, 0.0}}};  // feasible set [0, 1]
  OracleConfig cfg;
  cfg.grid_step = 0.001;
  const auto res = oracle::oracle_uq(uq, cfg);
  CHECK(res.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(res.value <= 1.0 + 1e-9);
}

TEST_CASE("oracle_uq: planar lens instance") {
  UqInstance uq{2, {0.0, 0.0}, {{{0.0, 0.0}, -4.0}, {{3.0, 0.0}, 5.0}}};
  OracleConfig cfg;
  cfg.grid_step = 0.01;
  const auto res = oracle::oracle_uq(uq, cfg);
  CHECK(res.value <= 4.0 + 1e-9);
  CHECK(res.value >= 4.0 - res.resolution);
  CHECK(res.value == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("oracle_uq: coarse grid falls back to an interior point") {
  // narrow lens; step 0.5 puts no grid point inside
  UqInstance uq{2, {0.0, 0.0}, {{{0.0, 0.0}, -1.0}, {{1.9, 0.0}, 1.9 * 1.9 - 1.0}}};
  OracleConfig cfg;
  cfg.grid_step = 0.5;
  const auto res = oracle::oracle_uq(uq, cfg);
  CHECK(res.value <= 1.0 + 1e-9);  // true optimum is 1
  CHECK(res.value >= 0.5);         // fallback + polish lands in the lens
  CHECK(feasible(uq, res.point, 1e-9));
}

TEST_CASE("sample_boundary: single ball boundary distances") {
  CcbInstance inst{2, {{{1.0, -2.0}, 1.5}}};
  OracleConfig cfg;
  cfg.samples = 200;
  const auto pts = oracle::sample_boundary(inst, cfg);
  REQUIRE(pts.size() == 200);
  for (const Vec& p : pts)
    CHECK(dist(p, inst.balls[0].center) == doctest::Approx(1.5).epsilon(1e-5));
}

TEST_CASE("sample_boundary: lens points satisfy both constraints, near one boundary") {
  CcbInstance inst{2, {{{0.0, 0.0}, 1.0}, {{1.0, 0.0}, 1.0}}};
  OracleConfig cfg;
  cfg.samples = 500;
  const auto pts = oracle::sample_boundary(inst, cfg);
  for (const Vec& p : pts) {
    double worst = -1e300;
    for (const Ball& b : inst.balls) worst = std::max(worst, dist(p, b.center) - b.radius);
    CHECK(worst <= 1e-8);   // feasible
    CHECK(worst >= -1e-4);  // close to some active boundary
  }
}

TEST_CASE("sample_boundary: deterministic under a fixed seed") {
  const CcbInstance inst = io::gen(3, 4, 17);
  OracleConfig cfg;
  cfg.samples = 50;
  cfg.seed = 123;
  const auto a = oracle::sample_boundary(inst, cfg);
  const auto b = oracle::sample_boundary(inst, cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("oracle_ccb: single ball recovers center and squared radius") {
  CcbInstance inst{3, {{{0.5, -1.0, 2.0}, 2.0}}};
  OracleConfig cfg;
  cfg.samples = 2000;
  const auto ball = oracle::oracle_ccb(inst, cfg);
  CHECK(ball.squared_radius == doctest::Approx(4.0).epsilon(1e-4));
  CHECK(dist(ball.center, inst.balls[0].center) < 1e-2);
}

TEST_CASE("oracle_ccb: two unit balls at distance 1") {
  CcbInstance inst{2, {{{0.0, 0.0}, 1.0}, {{1.0, 0.0}, 1.0}}};
  OracleConfig cfg;
  cfg.samples = 10000;
  const auto ball = oracle::oracle_ccb(inst, cfg);
  CHECK(ball.squared_radius == doctest::Approx(0.75).epsilon(1e-3));
  CHECK(std::fabs(ball.center[0] - 0.5) < 1e-2);
  CHECK(std::fabs(ball.center[1]) < 1e-2);
}

TEST_CASE("oracle_ccb: 1-D reference pair") {
  CcbInstance inst{1, {{{-0.5}, std::sqrt(4.25)}, {{0.5}, 0.5}}};
  OracleConfig cfg;
  cfg.samples = 64;
  const auto ball = oracle::oracle_ccb(inst, cfg);
  CHECK(ball.center[0] == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(ball.squared_radius == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("oracle_interior_point lands strictly inside") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const CcbInstance inst = io::gen(2 + static_cast<int>(seed % 3), 4, seed);
    const Vec x = oracle::oracle_interior_point(inst);
    for (const Ball& b : inst.balls) CHECK(dist(x, b.center) < b.radius);
  }
}
