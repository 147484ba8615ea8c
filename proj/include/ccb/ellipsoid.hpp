#pragma once

#include <functional>

#include "ccb/types.hpp"

namespace ccb {

// Generic cutting-plane minimizer for a nonsmooth convex f over a ball
// Q = { x : ||x - q_center|| <= q_radius }, maintaining the iterate y_k and
// shape matrix H_k. Feasible iterates cut with a subgradient of f,
// infeasible ones with the gradient of ||x - q_center||^2 - q_radius^2.
//
// Requires n >= 2 (the H update divides by n^2 - 1); 1-D callers use
// minimize_convex_1d below.

struct EllipsoidProblem {
  std::function<double(const Vec&)> value;      // f(y)
  std::function<Vec(const Vec&)> subgradient;   // some g in the subdifferential at y
  Vec q_center;
  double q_radius = 0.0;
};

struct EllipsoidOptions {
  int iterations = 0;       // number of update steps to run
  int max_iterations = 0;   // hard cap; 0 means no cap beyond `iterations`
  // Called once per iterate with (k, y_k, H_k row-major). Optional.
  std::function<void(int, const Vec&, const std::vector<double>&)> observer;
};

struct EllipsoidResult {
  Vec best_point;
  double best_value = 0.0;
  int iterations = 0;
  bool hit_iteration_cap = false;
};

EllipsoidResult ellipsoid_minimize(const EllipsoidProblem& prob, const EllipsoidOptions& opts);

// Golden-section minimization of a convex function on [lo, hi]; returns the
// best point found after shrinking the bracket below `xtol`.
double minimize_convex_1d(const std::function<double(double)>& f, double lo, double hi,
                          double xtol, double* best_value = nullptr);

}  // namespace ccb
