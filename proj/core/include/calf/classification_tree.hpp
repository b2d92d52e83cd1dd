// classification_tree.hpp -- binary discrimination trees over words.
//
// Internal nodes carry discriminator words; sifting a word answers the
// membership of word.discriminator at each node, going left on 1. Leaves
// carry disjoint subsets of the prefix set S, and the structure maintains
// that every prefix sits in exactly the leaf it sifts into.

#pragma once

#include <optional>
#include <set>
#include <string>

#include "calf/hypothesis.hpp"
#include "calf/oracle.hpp"

namespace calf {

class ClassificationTree {
public:
    struct Defect {
        enum class Kind { closedness, consistency };
        Kind kind = Kind::closedness;
        // Closedness: the word from {eps} u S.A that sifted into an empty
        // leaf and should join S.
        Word word;
        // Consistency: two prefixes sharing a leaf plus the discriminator
        // that separates them (eps for an output disagreement, a.u via the
        // lowest common ancestor otherwise).
        Word s1, s2, discriminator;
    };

    explicit ClassificationTree(Alphabet alphabet);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<Word>& words() const { return words_; }

    // Leaf the word classifies into; one query per internal node passed.
    int sift(const Word& w, CachedMembership& oracle) const;

    // Adds w to S and to the leaf it sifts into. False when already known.
    bool add_word(const Word& w, CachedMembership& oracle);

    // Replaces the leaf by an internal node labeled v and partitions its
    // members by membership of member.v (1 goes left). Splitting a leaf
    // with two or more members requires v to actually separate them.
    void split(int leaf, const Word& v, CachedMembership& oracle);

    // Checks init-closedness, delta-closedness, out-consistency and
    // delta-consistency, in that order, and reports the first defect.
    std::optional<Defect> find_defect(CachedMembership& oracle) const;

    // Requires a defect-free tree; states are the nonempty leaves.
    Hypothesis hypothesis(CachedMembership& oracle) const;

    int leaf_of(const Word& s) const;  // membership bookkeeping, no queries
    std::size_t nonempty_leaf_count() const;
    std::size_t node_count() const { return nodes_.size(); }

    // Indented dump: "? word" for internal nodes, "[s1, s2]" for leaves.
    std::string dump() const;

private:
    struct Node {
        bool is_leaf = true;
        Word label;                  // discriminator, internal nodes only
        int left = -1, right = -1;   // 1-branch, 0-branch
        int parent = -1;
        std::vector<Word> members;   // leaves only, in S order
    };

    int lca(int node_a, int node_b) const;
    int depth(int node) const;

    Alphabet alphabet_;
    std::vector<Node> nodes_;
    int root_ = 0;
    std::vector<Word> words_;  // S
    std::set<Word> word_set_;
};

}  // namespace calf
