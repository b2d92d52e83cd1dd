// dfa.hpp -- complete deterministic finite automata and exact checks on them.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "calf/word.hpp"

namespace calf {

using State = std::uint32_t;

// A complete DFA over a token alphabet. States are dense ids 0..n-1 and
// delta is total; validate() enforces both. Instances are immutable values
// once built and all operations on them are pure.
struct Dfa {
    Alphabet alphabet;
    std::uint32_t num_states = 0;
    State initial = 0;
    std::vector<bool> accepting;  // indexed by state
    std::vector<State> delta;     // num_states * |alphabet|, row-major by state

    State next(State q, Symbol a) const { return delta[q * alphabet.size() + a]; }
    void set_next(State q, Symbol a, State to) { delta[q * alphabet.size() + a] = to; }

    // Throws InputError when the structure is not a complete DFA.
    void validate() const;
};

State run_from(const Dfa& d, State q, const Word& w);
bool eval_from(const Dfa& d, State q, const Word& w);
bool eval(const Dfa& d, const Word& w);

Dfa complement(const Dfa& d);

// BFS relabeling from the initial state, symbols in alphabet order,
// restricted to the reachable part. Two DFAs accept the same language from
// isomorphic reachable parts iff their canonical forms are equal.
Dfa canonical(const Dfa& d);

// Isomorphism of reachable parts.
bool isomorphic(const Dfa& u, const Dfa& v);

// None iff the languages are equal; otherwise the shortest word in the
// symmetric difference, ties broken lexicographically by alphabet order.
std::optional<Word> find_counterexample(const Dfa& u, const Dfa& v);

// Uniform complete DFA: every transition target and acceptance bit is drawn
// from the generator, initial state 0. Deterministic in the seed across
// platforms (no distribution objects involved).
Dfa random_dfa(std::uint64_t seed, std::uint32_t n, const Alphabet& alphabet);

}  // namespace calf
