// hypothesis.hpp -- the automaton extracted from a converged approximation.

#pragma once

#include <vector>

#include "calf/dfa.hpp"

namespace calf {

// States correspond 1:1 to distinct table rows or nonempty tree leaves;
// representatives[q] is the access prefix that realizes state q. For
// table-derived hypotheses, rows[q] is the bit row of that prefix (empty
// for tree-derived ones).
struct Hypothesis {
    Dfa dfa;
    std::vector<Word> representatives;
    std::vector<std::vector<bool>> rows;
};

}  // namespace calf
