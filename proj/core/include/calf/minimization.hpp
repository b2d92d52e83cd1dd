// minimization.hpp -- reachability analysis, state merging, splitting trees.
//
// minimize() composes the two phases: restrict to the reachable part, then
// merge states that accept the same language. Both phases also export the
// word sets conformance testing feeds on: shortest access words per state
// and a suffix set separating every distinguishable state pair.

#pragma once

#include <string>
#include <utility>

#include "calf/dfa.hpp"

namespace calf {

struct AccessSet {
    // words[q] is the shortest word reaching state q of the reduced DFA
    // (ties broken by alphabet order); words[initial] is eps. The vector
    // doubles as the ordered prefix list S.
    std::vector<Word> words;
};

struct SeparatorSet {
    // Ordered suffix list E, eps first; separates every pair of
    // language-distinct states of the input.
    std::vector<Word> words;
};

// Leaves partition the states; two states agree on a label exactly when
// they sit in the same subtree under the node carrying it.
struct SplittingTree {
    struct Node {
        bool is_leaf = true;
        Word label;
        int left = -1, right = -1, parent = -1;
        std::vector<State> states;
    };
    std::vector<Node> nodes;
    int root = 0;

    int leaf_of(State q) const;
    // Labels on the root-to-leaf path of q: a state identifier set.
    std::vector<Word> identifiers(State q) const;
    std::string dump(const Alphabet& alphabet) const;
};

// BFS restriction to the reachable states, relabeled in discovery order.
std::pair<Dfa, AccessSet> reachable_part(const Dfa& d);

// Moore's reduction as suffix-set growth: E starts at {eps} and gains a.e
// whenever two states with equal signatures over E disagree after a.
// Merges all states (reachability is not required nor established).
std::pair<Dfa, SeparatorSet> moore_merge(const Dfa& d);

// Same quotient as moore_merge, computed by splitting partition blocks and
// recording the discriminators in a tree. A block with an inconsistency
// under some symbol is split into one part per successor block at once.
std::pair<Dfa, SplittingTree> splitting_tree_minimize(const Dfa& d);

// Reachable part followed by state merging; the result is minimal.
Dfa minimize(const Dfa& d);

}  // namespace calf
