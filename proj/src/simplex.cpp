#include "ccb/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace ccb {

namespace {

constexpr double kPivotTol = 1e-10;  // relative to row max
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-8;

struct Tableau {
  int m = 0;       // rows
  int ncols = 0;   // columns excluding rhs
  std::vector<double> t;  // (m) x (ncols+1), row-major, last col = rhs
  std::vector<int> basis;
  std::vector<double> row_scale;
  std::vector<bool> inert;  // redundant 0 = 0 rows left over from phase one

  double& at(int i, int j) { return t[static_cast<std::size_t>(i) * (ncols + 1) + j]; }
  double at(int i, int j) const { return t[static_cast<std::size_t>(i) * (ncols + 1) + j]; }
  double& rhs(int i) { return at(i, ncols); }
  double rhs(int i) const { return at(i, ncols); }

  void rescale() {
    for (int i = 0; i < m; ++i) {
      double s = 0.0;
      for (int j = 0; j < ncols; ++j) s = std::max(s, std::fabs(at(i, j)));
      row_scale[i] = std::max(s, 1.0);
    }
  }

  void pivot(int pr, int pc) {
    const double pv = at(pr, pc);
    for (int j = 0; j <= ncols; ++j) at(pr, j) /= pv;
    for (int i = 0; i < m; ++i) {
      if (i == pr) continue;
      const double f = at(i, pc);
      if (f == 0.0) continue;
      for (int j = 0; j <= ncols; ++j) at(i, j) -= f * at(pr, j);
      at(i, pc) = 0.0;
    }
    at(pr, pc) = 1.0;
    basis[pr] = pc;
    row_scale[pr] = std::max(row_scale[pr], 1.0);
  }
};

}  // namespace

LpOutcome simplex(const LpProblem& prob) {
  const int n = prob.n;
  const int m = static_cast<int>(prob.rows.size());
  for (const LpRow& r : prob.rows)
    if (static_cast<int>(r.coeffs.size()) != n)
      throw SolverError(ErrorCode::DimensionMismatch, "lp row width mismatch");

  std::vector<bool> is_free(n, false);
  if (!prob.free_var.empty()) is_free.assign(prob.free_var.begin(), prob.free_var.end());

  // internal columns: split free variables, then slacks/surplus, then artificials
  std::vector<int> col_of(n);
  int nint = 0;
  for (int j = 0; j < n; ++j) {
    col_of[j] = nint;
    nint += is_free[j] ? 2 : 1;
  }
  std::vector<bool> flipped(m, false);
  int nslack = 0;
  for (const LpRow& r : prob.rows)
    if (r.sense != Sense::Eq) ++nslack;

  Tableau tab;
  tab.m = m;
  // reserve an artificial column per row (unused ones stay zero)
  tab.ncols = nint + nslack + m;
  tab.t.assign(static_cast<std::size_t>(m) * (tab.ncols + 1), 0.0);
  tab.basis.assign(m, -1);
  tab.row_scale.assign(m, 1.0);
  tab.inert.assign(m, false);
  const int art0 = nint + nslack;
  std::vector<bool> is_artificial(tab.ncols, false);
  for (int j = art0; j < tab.ncols; ++j) is_artificial[j] = true;

  int slack_idx = nint;
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  for (int i = 0; i < m; ++i) {
    const LpRow& r = prob.rows[i];
    double sign = 1.0;
    Sense sense = r.sense;
    if (r.rhs < 0.0) {
      sign = -1.0;
      flipped[i] = true;
      if (sense == Sense::Le)
        sense = Sense::Ge;
      else if (sense == Sense::Ge)
        sense = Sense::Le;
    }
    for (int j = 0; j < n; ++j) {
      const double v = sign * r.coeffs[j];
      tab.at(i, col_of[j]) = v;
      if (is_free[j]) tab.at(i, col_of[j] + 1) = -v;
    }
    tab.rhs(i) = sign * r.rhs;
    if (sense == Sense::Le) {
      slack_col[i] = slack_idx;
      tab.at(i, slack_idx) = 1.0;
      tab.basis[i] = slack_idx;
      ++slack_idx;
    } else if (sense == Sense::Ge) {
      slack_col[i] = slack_idx;
      tab.at(i, slack_idx) = -1.0;
      ++slack_idx;
    }
    if (tab.basis[i] < 0) {
      art_col[i] = art0 + i;
      tab.at(i, art_col[i]) = 1.0;
      tab.basis[i] = art_col[i];
    }
  }
  tab.rescale();

  const long pivot_budget = 2000 + 200L * (m + tab.ncols);
  long pivots = 0;

  // price: reduced-cost row for cost vector c over internal columns
  auto run_phase = [&](const std::vector<double>& cost, bool allow_artificial) {
    std::vector<double> red(tab.ncols);
    while (true) {
      for (int j = 0; j < tab.ncols; ++j) {
        double z = 0.0;
        for (int i = 0; i < m; ++i) {
          const double cb = cost[tab.basis[i]];
          if (cb != 0.0) z += cb * tab.at(i, j);
        }
        red[j] = cost[j] - z;
      }
      int enter = -1;
      for (int j = 0; j < tab.ncols; ++j) {
        if (!allow_artificial && is_artificial[j]) continue;
        if (red[j] > kCostTol) {
          enter = j;  // Bland: smallest index
          break;
        }
      }
      if (enter < 0) return true;  // optimal for this phase
      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m; ++i) {
        if (tab.inert[i]) continue;
        const double a = tab.at(i, enter);
        if (a <= kPivotTol * tab.row_scale[i]) continue;
        const double ratio = tab.rhs(i) / a;
        if (leave < 0 || ratio < best_ratio - 1e-15 ||
            (std::fabs(ratio - best_ratio) <= 1e-15 && tab.basis[i] < tab.basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;  // unbounded in this phase
      tab.pivot(leave, enter);
      if (++pivots > pivot_budget)
        throw SolverError(ErrorCode::NumericalFailure, "simplex pivot budget exhausted");
    }
  };

  // phase 1: maximize -sum(artificials)
  bool need_phase1 = false;
  for (int i = 0; i < m; ++i)
    if (art_col[i] >= 0) need_phase1 = true;
  if (need_phase1) {
    std::vector<double> c1(tab.ncols, 0.0);
    for (int j = art0; j < tab.ncols; ++j) c1[j] = -1.0;
    run_phase(c1, true);
    double infeas = 0.0;
    for (int i = 0; i < m; ++i)
      if (is_artificial[tab.basis[i]]) infeas += tab.rhs(i);
    double bscale = 1.0;
    for (int i = 0; i < m; ++i) bscale = std::max(bscale, std::fabs(tab.rhs(i)));
    if (infeas > kFeasTol * bscale) {
      LpOutcome out;
      out.status = LpStatus::Infeasible;
      return out;
    }
    // drive zero-level artificials out of the basis; pivoting on either sign
    // is valid because the row's rhs is zero. Rows with no structural entry
    // left are redundant and go inert.
    for (int i = 0; i < m; ++i) {
      if (!is_artificial[tab.basis[i]]) continue;
      bool driven = false;
      for (int j = 0; j < art0; ++j) {
        if (std::fabs(tab.at(i, j)) > kPivotTol * tab.row_scale[i]) {
          tab.pivot(i, j);
          driven = true;
          break;
        }
      }
      if (!driven) tab.inert[i] = true;
    }
  }

  // phase 2
  std::vector<double> c2(tab.ncols, 0.0);
  for (int j = 0; j < n; ++j) {
    c2[col_of[j]] = prob.objective[j];
    if (is_free[j]) c2[col_of[j] + 1] = -prob.objective[j];
  }
  const bool bounded = run_phase(c2, false);

  LpOutcome out;
  if (!bounded) {
    // recover the improving ray from the entering column
    std::vector<double> red(tab.ncols);
    for (int j = 0; j < tab.ncols; ++j) {
      double z = 0.0;
      for (int i = 0; i < m; ++i) {
        const double cb = c2[tab.basis[i]];
        if (cb != 0.0) z += cb * tab.at(i, j);
      }
      red[j] = c2[j] - z;
    }
    int enter = -1;
    for (int j = 0; j < tab.ncols && enter < 0; ++j) {
      if (is_artificial[j] || red[j] <= kCostTol) continue;
      bool eligible_pivot = false;
      for (int i = 0; i < m; ++i) {
        if (tab.inert[i]) continue;
        if (tab.at(i, j) > kPivotTol * tab.row_scale[i]) {
          eligible_pivot = true;
          break;
        }
      }
      if (!eligible_pivot) enter = j;
    }
    out.status = LpStatus::Unbounded;
    if (enter >= 0) {
      std::vector<double> dir(tab.ncols, 0.0);
      dir[enter] = 1.0;
      for (int i = 0; i < m; ++i) dir[tab.basis[i]] = -tab.at(i, enter);
      out.ray.assign(n, 0.0);
      for (int j = 0; j < n; ++j) {
        out.ray[j] = dir[col_of[j]];
        if (is_free[j]) out.ray[j] -= dir[col_of[j] + 1];
      }
    }
    return out;
  }

  out.status = LpStatus::Optimal;
  std::vector<double> xi(tab.ncols, 0.0);
  for (int i = 0; i < m; ++i) xi[tab.basis[i]] = tab.rhs(i);
  out.x.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    out.x[j] = xi[col_of[j]];
    if (is_free[j]) out.x[j] -= xi[col_of[j] + 1];
  }
  out.value = dot(out.x, prob.objective);

  // duals from the reduced costs of slack / artificial columns
  std::vector<double> red(tab.ncols);
  for (int j = 0; j < tab.ncols; ++j) {
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
      const double cb = c2[tab.basis[i]];
      if (cb != 0.0) z += cb * tab.at(i, j);
    }
    red[j] = c2[j] - z;
  }
  out.duals.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double y;
    if (prob.rows[i].sense == Sense::Eq)
      y = -red[art_col[i]];
    else if ((prob.rows[i].sense == Sense::Le) != flipped[i])
      y = -red[slack_col[i]];
    else
      y = red[slack_col[i]];
    out.duals[i] = flipped[i] ? -y : y;
  }
  return out;
}

}  // namespace ccb
