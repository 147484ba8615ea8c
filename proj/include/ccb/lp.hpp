#pragma once

#include "ccb/simplex.hpp"
#include "ccb/types.hpp"

namespace ccb {

// Relaxation of UQ obtained by replacing x'x with a scalar y:
//   max y - 2 a0'x   s.t.   y - 2 a_i'x + b_i <= 0.
// Unbounded exactly when a0 lies outside conv{a_1..a_p}. On Optimal the
// outcome's x holds the n coordinates of x* followed by y*.
LpOutcome uq_lp(const UqInstance& uq);

// The dual: min -sum b_i l_i  s.t.  sum l_i a_i = a0, sum l_i = 1, l >= 0,
// solved as its own primal. Infeasible iff uq_lp is Unbounded; on Optimal,
// x holds the multipliers and value equals the uq_lp value.
LpOutcome uq_dlp(const UqInstance& uq);

// convenience accessors for uq_lp outcomes
Vec lp_point_x(const LpOutcome& out, int dim);
double lp_point_y(const LpOutcome& out, int dim);

}  // namespace ccb
