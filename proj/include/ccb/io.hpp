#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "ccb/types.hpp"

namespace ccb::io {

// Instance files are canonical JSON (sorted keys, shortest round-trip
// floats):
//   {"balls":[{"center":[...],"radius":r},...],"dim":n,"kind":"ccb"}
//   {"a0":[...],"constraints":[{"a":[...],"b":b},...],"dim":n,"kind":"uq"}

using Instance = std::variant<CcbInstance, UqInstance>;

Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

std::string to_canonical_json(const CcbInstance& inst);
std::string to_canonical_json(const UqInstance& uq);

// Random feasible instance: anchor x0 and centers uniform in
// [-spread, spread]^n, radii ||x0 - a_i|| (1+margin) + margin, which bounds
// the interior gamma by 1/(1+margin). Byte-identical output per seed.
CcbInstance gen(int dim, int p, std::uint64_t seed, double spread = 1.0, double margin = 0.5);

}  // namespace ccb::io
