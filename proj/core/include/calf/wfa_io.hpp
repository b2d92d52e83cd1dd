// wfa_io.hpp -- the line-oriented WFA file format.
//
//   wfa
//   alphabet: a b
//   dim: 2
//   init: 1 0
//   out: 0 1
//   a: 1 1 / 0 1
//   b: 1 0 / 0 1
//
// Entries are rationals "p" or "p/q"; matrix rows are separated by "/".
// One matrix line per symbol, in any order, each exactly once.

#pragma once

#include <string>
#include <string_view>

#include "calf/wfa.hpp"

namespace calf {

Wfa parse_wfa(std::string_view text);
std::string serialize(const Wfa& w);

}  // namespace calf
