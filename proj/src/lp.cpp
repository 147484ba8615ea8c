#include "ccb/lp.hpp"

namespace ccb {

LpOutcome uq_lp(const UqInstance& uq) {
  const int n = uq.dim;
  LpProblem prob;
  prob.n = n + 1;  // x then y
  prob.objective.assign(n + 1, 0.0);
  for (int j = 0; j < n; ++j) prob.objective[j] = -2.0 * uq.a0[j];
  prob.objective[n] = 1.0;
  prob.free_var.assign(n + 1, true);
  prob.rows.reserve(uq.p());
  for (int i = 0; i < uq.p(); ++i) {
    LpRow row;
    row.coeffs.assign(n + 1, 0.0);
    for (int j = 0; j < n; ++j) row.coeffs[j] = -2.0 * uq.constraints[i].a[j];
    row.coeffs[n] = 1.0;
    row.sense = Sense::Le;
    row.rhs = -uq.constraints[i].b;
    prob.rows.push_back(std::move(row));
  }
  return simplex(prob);
}

LpOutcome uq_dlp(const UqInstance& uq) {
  const int n = uq.dim;
  const int p = uq.p();
  LpProblem prob;
  prob.n = p;
  prob.objective.assign(p, 0.0);
  for (int i = 0; i < p; ++i) prob.objective[i] = uq.constraints[i].b;  // max sum b_i l_i
  prob.rows.reserve(n + 1);
  for (int j = 0; j < n; ++j) {
    LpRow row;
    row.coeffs.assign(p, 0.0);
    for (int i = 0; i < p; ++i) row.coeffs[i] = uq.constraints[i].a[j];
    row.sense = Sense::Eq;
    row.rhs = uq.a0[j];
    prob.rows.push_back(std::move(row));
  }
  LpRow sum_row;
  sum_row.coeffs.assign(p, 1.0);
  sum_row.sense = Sense::Eq;
  sum_row.rhs = 1.0;
  prob.rows.push_back(std::move(sum_row));

  LpOutcome out = simplex(prob);
  if (out.status == LpStatus::Optimal) out.value = -out.value;  // report min -sum b_i l_i
  return out;
}

Vec lp_point_x(const LpOutcome& out, int dim) {
  return Vec(out.x.begin(), out.x.begin() + dim);
}

double lp_point_y(const LpOutcome& out, int dim) { return out.x[dim]; }

}  // namespace ccb
