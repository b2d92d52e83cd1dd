// Shared machines and helpers for the test suites.

#pragma once

#include "calf/dfa.hpp"
#include "calf/wfa.hpp"

namespace calf::testing {

inline Alphabet ab() {
    return Alphabet({"a", "b"});
}

inline Alphabet just_a() {
    return Alphabet({"a"});
}

inline Word w(const Alphabet& alphabet, const std::string& text) {
    return parse_word(alphabet, text);
}

// Even number of a's over {a,b}; initial state accepting.
inline Dfa make_d1() {
    Dfa d;
    d.alphabet = ab();
    d.num_states = 2;
    d.initial = 0;
    d.accepting = {true, false};
    d.delta = {1, 0, 0, 1};
    d.validate();
    return d;
}

// q0 -> q1 -> q2 (self loop) over {a}, accepting {q1, q2}.
inline Dfa make_d2() {
    Dfa d;
    d.alphabet = just_a();
    d.num_states = 3;
    d.initial = 0;
    d.accepting = {false, true, true};
    d.delta = {1, 2, 2};
    d.validate();
    return d;
}

// Words whose second symbol is a (minimal DFA has 4 states).
inline Dfa make_second_symbol_a() {
    Dfa d;
    d.alphabet = ab();
    d.num_states = 4;
    d.initial = 0;
    d.accepting = {false, false, true, false};
    // 0 -any-> 1; 1 -a-> 2, 1 -b-> 3; 2,3 sinks
    d.delta = {1, 1, 2, 3, 2, 2, 3, 3};
    d.validate();
    return d;
}

// Words ending in b.
inline Dfa make_ends_in_b() {
    Dfa d;
    d.alphabet = ab();
    d.num_states = 2;
    d.initial = 0;
    d.accepting = {false, true};
    d.delta = {0, 1, 0, 1};
    d.validate();
    return d;
}

// The empty language over {a,b}.
inline Dfa make_empty_language() {
    Dfa d;
    d.alphabet = ab();
    d.num_states = 1;
    d.initial = 0;
    d.accepting = {false};
    d.delta = {0, 0};
    d.validate();
    return d;
}

inline Dfa make_all_accepting(std::uint32_t states) {
    Dfa d;
    d.alphabet = ab();
    d.num_states = states;
    d.initial = 0;
    d.accepting.assign(states, true);
    d.delta.resize(states * 2);
    for (State q = 0; q < states; ++q) {
        d.set_next(q, 0, (q + 1) % states);
        d.set_next(q, 1, q);
    }
    d.validate();
    return d;
}

// Counts a's: dim 2, init (1,0), M_a = [[1,1],[0,1]], M_b = I, out = (0,1)^T.
inline Wfa make_w1() {
    Wfa w;
    w.alphabet = ab();
    w.dim = 2;
    w.init = {Rational(1), Rational(0)};
    w.trans = {
        {{Rational(1), Rational(1)}, {Rational(0), Rational(1)}},
        {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}},
    };
    w.out = {Rational(0), Rational(1)};
    w.validate();
    return w;
}

inline Wfa make_zero_wfa(std::uint32_t dim) {
    Wfa w;
    w.alphabet = ab();
    w.dim = dim;
    w.init.assign(dim, Rational(0));
    w.trans.assign(2, RatMat(dim, RatVec(dim, Rational(0))));
    w.out.assign(dim, Rational(0));
    w.validate();
    return w;
}

}  // namespace calf::testing
