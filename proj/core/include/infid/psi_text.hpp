#pragma once

#include <string>
#include <string_view>

#include "infid/functional.hpp"

namespace infid {

// Text form of a psi expression tree:
//
//   node := "linear(" vec ")"
//         | "absdev(" vec "," num ")"            |<c,x> - num|
//         | "dist(" num "," vec ")"              num * ||x - vec||_p
//         | "smooth(" num "," num "," vec ")"    num * sqrt(num + ||x - vec||_2^2)
//         | "max(" node {"," node} ")"
//         | "sum(" node {"," node} ")"
//         | "scale(" num "," node ")"
//         | "shift(" node "," num ")"           node - num
//   vec  := "[" num {"," num} "]"
//
// Whitespace is ignored between tokens. Numbers are written in shortest round-trip form, so
// parse(format(f)) reproduces every parameter bit for bit.
std::string format_psi(const LipschitzFn& psi);

// Throws ParseError (line 1, column = 1-based offset in `text`) on malformed input and
// InvalidInput when the parsed parameters are rejected by the constructors.
LipschitzFn parse_psi(std::string_view text, const Space& space);

// Shortest decimal string that parses back to exactly `v`.
std::string format_number(double v);

}  // namespace infid
