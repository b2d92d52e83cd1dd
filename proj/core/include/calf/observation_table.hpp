// observation_table.hpp -- the classic prefix/suffix table approximation.
//
// The table caches membership bits for (u, e) with u in S u S.A and e in E.
// The empty word is kept in both S and E at all times, so the initial state
// and acceptance of the hypothesis are always defined and out-consistency
// is subsumed by row equality.

#pragma once

#include <optional>
#include <set>
#include <string>

#include "calf/hypothesis.hpp"
#include "calf/oracle.hpp"

namespace calf {

class ObservationTable {
public:
    explicit ObservationTable(Alphabet alphabet);
    ObservationTable(Alphabet alphabet, const std::vector<Word>& prefixes,
                     const std::vector<Word>& suffixes);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<Word>& prefixes() const { return prefixes_; }
    const std::vector<Word>& suffixes() const { return suffixes_; }

    // False when the word was already present.
    bool add_prefix(const Word& u);
    bool add_suffix(const Word& e);

    // Completes the cells, querying the oracle only for missing ones.
    void fill(CachedMembership& oracle);

    bool filled() const;

    // First (S order, then alphabet order) one-step extension whose row is
    // not among the S rows.
    std::optional<Word> closed_defect() const;

    // First witness suffix a.e distinguishing two prefixes with equal rows.
    std::optional<Word> consistency_defect() const;

    // Alternates closedness and consistency fixing until both pass.
    void fix(CachedMembership& oracle);

    // Requires a filled, closed, consistent table.
    Hypothesis hypothesis() const;

    std::vector<bool> row(const Word& u) const;
    std::size_t distinct_row_count() const;

    // TSV dump: row labels in word form, one column per suffix.
    std::string dump() const;

private:
    bool cell(const Word& u, const Word& e) const;
    void extension_rows(std::vector<Word>& out) const;  // S.A in scan order

    Alphabet alphabet_;
    std::vector<Word> prefixes_;
    std::vector<Word> suffixes_;
    std::set<Word> prefix_set_;
    std::set<Word> suffix_set_;
    std::map<Word, std::map<Word, bool>> cells_;
};

}  // namespace calf
