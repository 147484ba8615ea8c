#pragma once

#include <optional>
#include <utility>

#include "ccb/types.hpp"
#include "ccb/uq.hpp"

namespace ccb::hardness {

struct PartitionInput {
  std::vector<long long> a;

  int n() const { return static_cast<int>(a.size()); }
};

// Encodes "does a'x = 0 have a solution over x in {-1,1}^n" as the
// ball-constrained problem with 2n+2 constraints
//   max x'x  s.t.  x'x +- x_i <= 1+n,  x'x -+ a'x <= n,
// whose value is n exactly when a partition exists. Returns both the UQ
// form (a0 = 0) and the equivalent ball-intersection instance.
std::pair<UqInstance, CcbInstance> reduce_partition(const PartitionInput& input);

// Exhaustive search over the sign cube, +1 tried before -1 per coordinate;
// reports the first hit in that order. Throws BudgetExceeded for n > 30.
std::optional<std::vector<int>> partition_bruteforce(const PartitionInput& input);

struct EquivalenceReport {
  int n = 0;
  double reduced_value = 0.0;
  bool value_attains_n = false;  // |reduced_value - n| <= 1e-6
  bool partition_exists = false;
  bool consistent = false;       // the two previous flags agree
  std::vector<int> partition;
  double center_norm = 0.0;      // minimax center of the reduced instance (should be ~0)
  double center_value = 0.0;
};

// Cross-checks the reduction: exact value of the reduced problem vs brute
// force existence, plus the minimax center (which is the origin by the
// symmetry of the feasible set).
EquivalenceReport check_partition_equivalence(const PartitionInput& input, double eps = 1e-4,
                           const SolveOptions& opts = {});

}  // namespace ccb::hardness
