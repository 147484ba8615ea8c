#pragma once

#include "ccb/types.hpp"

namespace ccb {

enum class Sense { Le, Ge, Eq };

struct LpRow {
  Vec coeffs;
  Sense sense = Sense::Le;
  double rhs = 0.0;
};

// maximize objective . x  subject to rows; variables are >= 0 unless marked
// free (free variables are split internally).
struct LpProblem {
  int n = 0;
  Vec objective;
  std::vector<LpRow> rows;
  std::vector<bool> free_var;  // size n; empty means all nonnegative
};

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Vec x;            // structural solution (Optimal)
  double value = 0.0;
  Vec duals;        // one multiplier per row (Optimal)
  Vec ray;          // improving feasible direction (Unbounded)
};

// Dense two-phase tableau simplex with Bland's anti-cycling rule (smallest
// eligible index enters; ratio ties leave by smallest basis index), pivot
// tolerance 1e-10 relative to the row max. Deterministic: identical inputs
// give identical vertices. Throws NumericalFailure if the pivot budget is
// exhausted.
LpOutcome simplex(const LpProblem& prob);

}  // namespace ccb
