// wfa_table.hpp -- observation tables over a field instead of bits.
//
// Closedness asks that every one-step extension row lies in the span of the
// prefix rows. Consistency is enforced through the transpose: the table is
// delta-consistent whenever the transposed table (reversed words, reversed
// language) is delta-closed, which is a column-span condition on the very
// same cells. Keeping eps in both S and E makes the init and output
// conditions hold by construction.

#pragma once

#include <optional>
#include <set>
#include <utility>

#include "calf/linalg.hpp"
#include "calf/oracle.hpp"
#include "calf/wfa.hpp"

namespace calf {

class WfaTable {
public:
    explicit WfaTable(Alphabet alphabet);
    WfaTable(Alphabet alphabet, const std::vector<Word>& prefixes,
             const std::vector<Word>& suffixes);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<Word>& prefixes() const { return prefixes_; }
    const std::vector<Word>& suffixes() const { return suffixes_; }

    bool add_prefix(const Word& u);
    bool add_suffix(const Word& e);

    void fill(CachedWeight& oracle);

    // Prefix rows as a matrix, in S order; bottom(a) likewise for S.a.
    RatMat top() const;
    RatMat bottom(Symbol a) const;
    std::size_t rank_top() const;

    // First (S order, alphabet order) extension row outside the top span.
    std::optional<std::pair<Word, Symbol>> closed_defect() const;

    // First suffix a.e witnessing a closedness defect of the transposed
    // table; adding it to E restores consistency progress.
    std::optional<Word> consistency_defect() const;

    void fix(CachedWeight& oracle);

    // Requires a closed and consistent table. States are the first rows
    // spanning the top (greedy in S order).
    Wfa hypothesis() const;

private:
    Rational cell(const Word& u, const Word& e) const;
    RatVec row(const Word& u) const;

    Alphabet alphabet_;
    std::vector<Word> prefixes_;
    std::vector<Word> suffixes_;
    std::set<Word> prefix_set_;
    std::set<Word> suffix_set_;
    std::map<Word, std::map<Word, Rational>> cells_;
};

}  // namespace calf
