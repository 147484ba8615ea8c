#pragma once

#include <utility>

#include "ccb/types.hpp"

namespace ccb {

// Scaled minimax distance max_i ||x - a_i|| / r_i; < 1 iff x is strictly
// inside every ball.
double scaled_minimax(const CcbInstance& inst, const Vec& x);

// Checks shape invariants (consistent dims, positive finite radii) and
// certifies a nonempty interior. Throws EmptyInterior when the best point
// found has gamma >= 1 - 1e-7 (tangent configurations are rejected).
InteriorCertificate validate(const CcbInstance& inst);

// Approximately solves min_x max_i ||x - a_i|| / r_i with the ellipsoid
// method (golden section for n = 1). The returned gamma is the value at the
// returned point and is within `tol` of the true minimax value. Never
// throws; callers compare gamma against 1.
InteriorCertificate find_interior_point(const CcbInstance& inst, double tol);

// Inner maximization of the minimax problem at center z, expressed as a UQ:
// a0 = z, a_i = ball centers, b_i = ||a_i||^2 - r_i^2. The UQ optimal value
// plus ||z||^2 equals max_{x in the intersection} ||x - z||^2.
UqInstance inner_uq(const CcbInstance& inst, const Vec& z);

// Translates the instance so x0 maps to the origin; all new b_i become
// f_i(x0) < 0 (origin strictly interior). Returns the shifted instance and
// the objective offset: v(original) = v(shifted) + offset.
std::pair<UqInstance, double> recenter(const UqInstance& uq, const Vec& x0);

// Relative-tolerance feasibility: f_i(x) <= tol * max(1, |b_i|) for all i.
bool feasible(const UqInstance& uq, const Vec& x, double tol = 1e-9);

// View of the UQ constraint set as balls (squared radius ||a_i||^2 - b_i).
CcbInstance uq_constraint_balls(const UqInstance& uq);

}  // namespace ccb
