#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccb::cli {

// Command-line front end. Subcommands: solve-ccb, solve-uq, relax-lp,
// relax-sqp, planar, approx, certify, reduce-partition, oracle, gen.
// Returns the process exit code: 0 success, 1 usage/parse/internal error,
// 2 infeasible or empty interior, 3 budget exhausted.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccb::cli
