#pragma once

#include <cstdint>
#include <optional>

#include "ccb/ccb.hpp"
#include "ccb/types.hpp"

namespace ccb::planar {

// Angular interval [start, start+span) on circle i, with Cartesian endpoints.
struct Arc {
  double start = 0.0;  // in [0, 2*pi)
  double span = 0.0;   // in (0, 2*pi]
  Vec first;
  Vec second;
};

struct CircleArcs {
  bool full_circle = false;  // no other ball cuts this circle
  bool dead = false;         // this circle carries no boundary at all
  std::vector<Arc> arcs;
};

struct ArcSet {
  std::vector<CircleArcs> per_circle;
  long long pair_evaluations = 0;  // unordered center pairs processed
};

struct Circle {
  Vec center{0.0, 0.0};
  double radius = 0.0;
  std::vector<Vec> support;  // up to 3 defining points
};

// Boundary structure of the ball intersection: for each circle, the angular
// intervals where it lies on the boundary (inside every other ball). Each
// other ball cuts one closed arc out of circle i, computed in closed form
// from the circle-circle geometry; the surviving set is the intersection of
// those p-1 arcs.
ArcSet arc_decomposition(const CcbInstance& inst);

// If some boundary arc spans at least pi (or a circle survives uncut), that
// ball is the smallest enclosing ball of the intersection.
std::optional<CcbSolution> major_arc_shortcut(const ArcSet& arcs, const CcbInstance& inst);

// Minimum enclosing circle of a planar point set, randomized incremental
// with move-to-front. Result is deterministic (the MEC is unique); the seed
// only permutes the insertion order. Empty input gives radius 0 at origin.
Circle welzl(const std::vector<Vec>& points, std::uint64_t seed);

struct PlanarStats {
  long long pair_evaluations = 0;
  std::size_t endpoint_count = 0;
  bool shortcut = false;
};

// Exact planar solver: arc decomposition, major-arc shortcut, else the MEC
// of all arc endpoints. The result is re-verified against the exact inner
// maximization; on disagreement the ellipsoid solver answers instead
// (fallback_used is set).
CcbSolution solve_planar(const CcbInstance& inst, const SolveOptions& opts = {},
                         PlanarStats* stats = nullptr);

}  // namespace ccb::planar
