#pragma once

#include <functional>
#include <optional>

#include "ccb/types.hpp"
#include "ccb/uq.hpp"

namespace ccb {

struct SqpResult {
  Vec lambda;               // point on the unit simplex
  Vec z_bar;                // sum lambda_i a_i
  double value = 0.0;       // sum lambda_i (r_i^2 - ||a_i||^2) + ||z_bar||^2
  double stationarity_gap = 0.0;
  int iterations = 0;
};

struct RatioCertificate {
  double gamma = 1.0;
  double ratio = 0.0;       // ((1-gamma)/(sqrt(2)+gamma))^2
  double lower = 0.0;       // ratio * v(SQP)
  double upper = 0.0;       // v(SQP)
  double achieved = 0.0;    // max_{x in intersection} ||x - z_bar||^2
  enum class Source { ChebOptimal, DmaxBound } gamma_source = Source::ChebOptimal;
  bool gamma_below_one = false;
};

enum class CcbMethod { Sqp, Ellipsoid, Planar };

struct CcbSolution {
  Vec center;
  double squared_radius = 0.0;
  CcbMethod method = CcbMethod::Ellipsoid;
  std::optional<RatioCertificate> certificate;
  double eps_bound = 0.0;  // ellipsoid accuracy target (or achieved bound)
  int iterations = 0;
  bool converged = true;
  bool fallback_used = false;  // planar coverage check failed, ellipsoid answered
};

// Minimizes the simplex-constrained convex quadratic whose optimum gives the
// approximate center z_bar. Frank-Wolfe with away steps and exact line
// search; stops when the linearization gap drops below gap_tol, so vertex
// optima are reached exactly. Throws IterationLimit if the gap target is
// not met.
SqpResult solve_sqp(const CcbInstance& inst, double gap_tol = 1e-10);

// max_{x in intersection} ||x - z||^2, via the exact inner solver.
double evaluate_center(const CcbInstance& inst, const Vec& z, const SolveOptions& opts = {});

// 2 (z - x*(z)) with x*(z) the deterministic inner argmax.
Vec ccb_subgradient(const CcbInstance& inst, const Vec& z, const SolveOptions& opts = {});

// Approximation certificate for the SQP center: gamma comes from the scaled
// minimax problem or from d_max / (sqrt(2) r_min), whichever is smaller and
// below one; the sandwich ratio*v <= achieved <= v is verified.
RatioCertificate sqp_certificate(const CcbInstance& inst, const SqpResult& sqp,
                                 const SolveOptions& opts = {});

struct CcbEllipsoidOptions {
  double eps = 1e-5;
  int max_iter = 0;  // 0: run exactly the iteration count from the accuracy bound
  SolveOptions inner;
  std::function<void(int, const Vec&, const std::vector<double>&)> observer;
};

// Ellipsoid method on f(z) = ||z||^2 + v(inner UQ at z) over the
// smallest-radius ball (1-D instances use golden-section instead). Returns
// the best feasible iterate; converged=false with the achieved bound when
// max_iter cut the run short.
CcbSolution solve_ccb_ellipsoid(const CcbInstance& inst, const CcbEllipsoidOptions& opts = {});

// Iteration count prescribed by the accuracy bound M R e^{-k/(2(n+1)^2)}.
int ellipsoid_iteration_bound(const CcbInstance& inst, double eps);

}  // namespace ccb
