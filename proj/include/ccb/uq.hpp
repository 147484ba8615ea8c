#pragma once

#include "ccb/lp.hpp"
#include "ccb/types.hpp"

namespace ccb {

// Classification of an optimal LP relaxation point (x*, y*) by the sign of
// y* - x*'x*. LpTight: relaxation solves UQ exactly at x*. SdpTight: the
// SDP value equals the UQ value (LP may be strictly above both).
// LpEqualsSdp: LP and SDP coincide (a gap to UQ is possible).
enum class TrichotomyCase { LpTight, SdpTight, LpEqualsSdp, Unbounded };

struct TrichotomyResult {
  TrichotomyCase kind = TrichotomyCase::Unbounded;
  Vec x;                  // LP optimal x* (empty when Unbounded)
  double y = 0.0;         // LP optimal y*
  double lp_value = 0.0;  // finite cases only
};

struct DualityConditionReport {
  bool outside_hull = false;     // a0 not in conv{a_1..a_p}
  bool nontrivial_cone = false;  // {x : (a_i-a0)'x >= 0 for all i} != {0}
  bool strong_duality_guaranteed = false;
};

enum class UqCertificate { ExactEnumeration, ExactLpTight, ApproxRatio };

struct UqSolution {
  Vec x;
  double value = 0.0;
  double upper_bound = 0.0;
  UqCertificate certificate = UqCertificate::ExactEnumeration;
  std::vector<int> active_set;  // constraint indices pinned active (enumeration)
  int root_index = 0;           // which root of the per-subset quadratic
  double ratio = 0.0;           // guaranteed fraction of upper_bound (ApproxRatio)
};

struct SolveOptions {
  long long budget = 10'000'000;  // max enumerated subsets
  int threads = 1;
};

// Sufficient conditions for strong duality. outside_hull is read off the
// dual LP; nontrivial_cone is decided exactly by 2n auxiliary LPs (maximize
// +-x_j over the cone, capped at 1: the optimum is 0 or 1 by scaling).
DualityConditionReport duality_conditions(const UqInstance& uq);

TrichotomyResult trichotomy(const UqInstance& uq);

// Exact global maximizer by active-set enumeration.
//
// Work happens in coordinates centered at a0 (w = x - a0), where the
// problem is: maximize z subject to z - 2 c_i'w + f_i(a0) <= 0 with
// c_i = a_i - a0, and z = ||w||^2. With r = rank{c_i} the w-component
// orthogonal to span{c_i} only enters through ||w||^2, so it is folded into
// one scalar and candidates live in the reduced space:
//   - for every active subset of size 1..r, the extrema of ||w||^2 over the
//     active manifold (a sphere slice) sit on one line, cut by one scalar
//     quadratic: this covers corners, smooth boundary maxima and optima
//     with balanced multipliers in a single construction;
//   - when r < n, vertices of the linearized system (r+1 active rows) lifted
//     back with the spare norm budget;
//   - when some a_i equals a0 exactly, that constraint caps z directly and
//     candidates on the cap sphere are completed by a minimum-norm solve.
// The feasible candidate with maximal z wins; ties break to the
// lexicographically smallest active set, then the smaller root index.
// Throws BudgetExceeded or (degenerate inputs only) NoCandidate.
UqSolution solve_exact(const UqInstance& uq, const SolveOptions& opts = {});

// SDP relaxation value without a conic solver: the LP value in the tight
// cases, the exact UQ value otherwise (including the LP-unbounded case,
// where strong duality holds).
double sdp_value(const UqInstance& uq, const SolveOptions& opts = {});

// Rounds the LP relaxation point to a feasible solution with value at least
// ((1-g)/(sqrt(2)+g))^2 * v(LP), g = max_i ||a_i||/sqrt(-b_i+||a_i||^2).
// Requires every b_i < 0. Delegates when the LP is already tight (returns
// x*) or the enumeration is (SdpTight / unbounded LP).
UqSolution approx_round(const UqInstance& uq, const SolveOptions& opts = {});

}  // namespace ccb
