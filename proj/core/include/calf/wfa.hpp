// wfa.hpp -- linear weighted automata over exact rationals.
//
// A word maps to init * M_a1 * ... * M_ak * out. The zero machine is
// normalized to dimension 0 and evaluates to 0 everywhere.

#pragma once

#include <cstdint>
#include <optional>

#include "calf/linalg.hpp"
#include "calf/word.hpp"

namespace calf {

struct Wfa {
    Alphabet alphabet;
    std::uint32_t dim = 0;
    RatVec init;                 // 1 x dim row vector
    std::vector<RatMat> trans;   // per symbol, dim x dim
    RatVec out;                  // dim x 1 column vector

    void validate() const;
};

Rational eval(const Wfa& w, const Word& word);

struct WfaMismatch {
    Word word;
    Rational lhs, rhs;
};

// None iff the machines agree on every word. Breadth-first over words with
// span pruning on the forward vectors of the difference automaton; finishes
// within dim(u) + dim(v) levels.
std::optional<WfaMismatch> find_counterexample(const Wfa& u, const Wfa& v);

struct WfaReduction {
    Wfa machine;
    // Words whose forward vectors span the reachable space of the reduced
    // machine, and words whose backward vectors span its observation space.
    std::vector<Word> access_words;
    std::vector<Word> separators;
};

// Forward reduction (restrict to the span of reachable vectors) followed by
// the dual backward reduction; the result is minimal and equivalent.
Wfa minimize(const Wfa& w);

// minimize() plus spanning word sets computed on the minimal machine.
WfaReduction minimize_with_words(const Wfa& w);

// Entries drawn uniformly from [lo, hi]; deterministic in the seed.
Wfa random_wfa(std::uint64_t seed, std::uint32_t dim, const Alphabet& alphabet, int lo = -1,
               int hi = 1);

}  // namespace calf
