#pragma once

#include <iosfwd>
#include <string>

#include "sphord/order_core.hpp"

namespace sphord {

// JSON structure files:
//   {"n": <int>, "elements": ["a", ...], "tuples": [["a","b",...], ...]}
// `tuples` lists all-distinct member tuples; any rotation of a stored orbit is
// accepted on read (the orientation-preserving rotation closure is applied),
// and writing emits one lexicographically-least representative per orbit.
// Repeated-entry tuples are implied members and rejected if present.

std::string to_json_string(const FiniteSphericalOrder& order);
void write_structure(std::ostream& out, const FiniteSphericalOrder& order);

FiniteSphericalOrder parse_structure(const std::string& json_text);
FiniteSphericalOrder read_structure(std::istream& in);

} // namespace sphord
