#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ccb/linalg.hpp"

namespace ccb {

// A closed ball { x : ||x - center||^2 <= radius^2 }.
struct Ball {
  Vec center;
  double radius = 0.0;
};

// Intersection of p balls in R^n. The minimax problem asks for the center z
// minimizing max_{x in the intersection} ||x - z||^2.
struct CcbInstance {
  int dim = 0;
  std::vector<Ball> balls;

  int p() const { return static_cast<int>(balls.size()); }
};

// max x'x - 2 a0'x  subject to  x'x - 2 a_i'x + b_i <= 0, i = 1..p.
// Every constraint is a ball of squared radius ||a_i||^2 - b_i around a_i.
struct UqConstraint {
  Vec a;
  double b = 0.0;
};

struct UqInstance {
  int dim = 0;
  Vec a0;
  std::vector<UqConstraint> constraints;

  int p() const { return static_cast<int>(constraints.size()); }

  double f0(const Vec& x) const { return norm_sq(x) - 2.0 * dot(a0, x); }
  double fi(int i, const Vec& x) const {
    return norm_sq(x) - 2.0 * dot(constraints[i].a, x) + constraints[i].b;
  }
};

// Point together with its scaled minimax value gamma = max_i ||x - a_i|| / r_i.
// gamma < 1 certifies that the point is strictly interior.
struct InteriorCertificate {
  Vec point;
  double gamma = 0.0;
};

enum class ErrorCode {
  DimensionMismatch,
  EmptyInterior,
  NotInterior,
  BudgetExceeded,
  NumericalFailure,
  NoCandidate,
  PreconditionViolated,
  IterationLimit,
  ParseError,
  Usage,
};

class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorCode code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyInterior: return "EmptyInterior";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::NoCandidate: return "NoCandidate";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

}  // namespace ccb
