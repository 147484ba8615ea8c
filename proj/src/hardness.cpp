#include "ccb/hardness.hpp"

#include <cmath>

#include "ccb/ccb.hpp"
#include "ccb/core.hpp"

namespace ccb::hardness {

std::pair<UqInstance, CcbInstance> reduce_partition(const PartitionInput& input) {
  const int n = input.n();
  if (n < 1) throw SolverError(ErrorCode::DimensionMismatch, "partition input needs n >= 1");

  UqInstance uq;
  uq.dim = n;
  uq.a0.assign(n, 0.0);
  uq.constraints.reserve(2 * n + 2);
  for (int i = 0; i < n; ++i) {  // x'x + x_i <= 1+n
    Vec c(n, 0.0);
    c[i] = -0.5;
    uq.constraints.push_back({std::move(c), -(1.0 + n)});
  }
  for (int i = 0; i < n; ++i) {  // x'x - x_i <= 1+n
    Vec c(n, 0.0);
    c[i] = 0.5;
    uq.constraints.push_back({std::move(c), -(1.0 + n)});
  }
  Vec half_a(n);
  for (int i = 0; i < n; ++i) half_a[i] = 0.5 * static_cast<double>(input.a[i]);
  uq.constraints.push_back({half_a, -static_cast<double>(n)});          // x'x - a'x <= n
  uq.constraints.push_back({scaled(half_a, -1.0), -static_cast<double>(n)});  // x'x + a'x <= n

  return {uq, uq_constraint_balls(uq)};
}

std::optional<std::vector<int>> partition_bruteforce(const PartitionInput& input) {
  const int n = input.n();
  if (n > 30) throw SolverError(ErrorCode::BudgetExceeded, "sign cube too large (n > 30)");
  const std::uint64_t total = 1ULL << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    long long sum = 0;
    for (int i = 0; i < n; ++i) {
      const bool neg = (mask >> (n - 1 - i)) & 1ULL;
      sum += neg ? -input.a[i] : input.a[i];
    }
    if (sum == 0) {
      std::vector<int> signs(n);
      for (int i = 0; i < n; ++i) signs[i] = ((mask >> (n - 1 - i)) & 1ULL) ? -1 : 1;
      return signs;
    }
  }
  return std::nullopt;
}

EquivalenceReport check_partition_equivalence(const PartitionInput& input, double eps, const SolveOptions& opts) {
  EquivalenceReport rep;
  rep.n = input.n();
  auto [uq, inst] = reduce_partition(input);

  const UqSolution sol = solve_exact(uq, opts);
  rep.reduced_value = sol.value;
  rep.value_attains_n = std::fabs(rep.reduced_value - rep.n) <= 1e-6;

  const auto part = partition_bruteforce(input);
  rep.partition_exists = part.has_value();
  if (part) rep.partition = *part;
  rep.consistent = (rep.value_attains_n == rep.partition_exists);

  CcbEllipsoidOptions eopts;
  eopts.eps = eps;
  eopts.inner = opts;
  const CcbSolution center = solve_ccb_ellipsoid(inst, eopts);
  rep.center_norm = norm(center.center);
  rep.center_value = center.squared_radius;
  return rep;
}

}  // namespace ccb::hardness
