// dfa_io.hpp -- the line-oriented DFA file format.
//
//   dfa
//   alphabet: a b
//   states: q0 q1
//   initial: q0
//   accepting: q0
//   q0 a -> q1
//   ...
//
// One transition per line, all |states|*|alphabet| required. '#' starts a
// comment. State names map to dense ids in file order.

#pragma once

#include <string>
#include <string_view>

#include "calf/dfa.hpp"

namespace calf {

Dfa parse_dfa(std::string_view text);
std::string serialize(const Dfa& d);

}  // namespace calf
