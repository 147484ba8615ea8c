#pragma once

#include <cstdint>

#include "ccb/types.hpp"

// Brute-force verifiers used by tests and as fallbacks. These deliberately
// share no numerical kernels with the solvers they check: feasibility,
// interior finding and the enclosing-ball code are all local to this module.

namespace ccb::oracle {

struct OracleConfig {
  int samples = 10000;
  double grid_step = 0.01;
  std::uint64_t seed = 1;
};

struct OracleValue {
  double value = 0.0;
  double resolution = 0.0;  // pessimistic bound on how far below the optimum this may sit
  Vec point;
};

struct OracleBall {
  Vec center;
  double squared_radius = 0.0;
  double resolution = 0.0;
};

// Lower bound on the UQ optimum: best objective over feasible grid points
// (n <= 3) or random samples (n > 3), then a projected coordinate-ascent
// polish from the best point. Falls back to an interior point when the grid
// finds nothing feasible.
OracleValue oracle_uq(const UqInstance& uq, const OracleConfig& cfg);

// N points on the boundary of the ball intersection, by ray shooting from an
// interior point with 20 bisection steps per ray. Deterministic per seed.
std::vector<Vec> sample_boundary(const CcbInstance& inst, const OracleConfig& cfg);

// Minimum enclosing ball of sample_boundary output (exact Welzl on the
// sampled points, any dimension); a lower-biased estimate of the Chebyshev
// radius with error bounded by the sampling resolution.
OracleBall oracle_ccb(const CcbInstance& inst, const OracleConfig& cfg);

// Strictly feasible point by Polyak subgradient steps on
// max_i (||x - a_i|| - r_i); independent of core::find_interior_point.
Vec oracle_interior_point(const CcbInstance& inst);

}  // namespace ccb::oracle
