#include "calf/observation_table.hpp"

#include <sstream>

namespace calf {

ObservationTable::ObservationTable(Alphabet alphabet) : alphabet_(std::move(alphabet)) {
    add_prefix(Word{});
    add_suffix(Word{});
}

ObservationTable::ObservationTable(Alphabet alphabet, const std::vector<Word>& prefixes,
                                   const std::vector<Word>& suffixes)
    : alphabet_(std::move(alphabet)) {
    add_prefix(Word{});
    add_suffix(Word{});
    for (const Word& u : prefixes)
        add_prefix(u);
    for (const Word& e : suffixes)
        add_suffix(e);
}

bool ObservationTable::add_prefix(const Word& u) {
    if (!prefix_set_.insert(u).second)
        return false;
    prefixes_.push_back(u);
    return true;
}

bool ObservationTable::add_suffix(const Word& e) {
    if (!suffix_set_.insert(e).second)
        return false;
    suffixes_.push_back(e);
    return true;
}

void ObservationTable::extension_rows(std::vector<Word>& out) const {
    for (const Word& s : prefixes_)
        for (Symbol a = 0; a < alphabet_.size(); ++a)
            out.push_back(s.append(a));
}

void ObservationTable::fill(CachedMembership& oracle) {
    // Attribute queries to "fill" unless a caller already set a phase
    // (defect fixing refills under "fix").
    std::optional<PhaseScope<CachedMembership>> phase;
    if (oracle.phase().empty())
        phase.emplace(oracle, "fill");
    std::vector<Word> labels = prefixes_;
    extension_rows(labels);
    for (const Word& u : labels) {
        auto& row_cells = cells_[u];
        for (const Word& e : suffixes_)
            if (row_cells.find(e) == row_cells.end())
                row_cells.emplace(e, oracle.query(u.concat(e)));
    }
}

bool ObservationTable::filled() const {
    std::vector<Word> labels = prefixes_;
    extension_rows(labels);
    for (const Word& u : labels) {
        auto it = cells_.find(u);
        if (it == cells_.end())
            return false;
        for (const Word& e : suffixes_)
            if (it->second.find(e) == it->second.end())
                return false;
    }
    return true;
}

bool ObservationTable::cell(const Word& u, const Word& e) const {
    auto it = cells_.find(u);
    if (it == cells_.end())
        throw PreconditionError("table not filled: missing row for a prefix");
    auto jt = it->second.find(e);
    if (jt == it->second.end())
        throw PreconditionError("table not filled: missing cell");
    return jt->second;
}

std::vector<bool> ObservationTable::row(const Word& u) const {
    std::vector<bool> bits;
    bits.reserve(suffixes_.size());
    for (const Word& e : suffixes_)
        bits.push_back(cell(u, e));
    return bits;
}

std::size_t ObservationTable::distinct_row_count() const {
    std::set<std::vector<bool>> rows;
    for (const Word& s : prefixes_)
        rows.insert(row(s));
    return rows.size();
}

std::optional<Word> ObservationTable::closed_defect() const {
    std::set<std::vector<bool>> upper;
    for (const Word& s : prefixes_)
        upper.insert(row(s));
    for (const Word& s : prefixes_)
        for (Symbol a = 0; a < alphabet_.size(); ++a) {
            Word t = s.append(a);
            if (upper.find(row(t)) == upper.end())
                return t;
        }
    return std::nullopt;
}

std::optional<Word> ObservationTable::consistency_defect() const {
    // Only pairs with equal rows can witness a defect; group first so the
    // scan is near-linear once rows have become distinct. The defect
    // returned is still the first in (S order, S order, alphabet, E) order.
    std::vector<std::vector<bool>> upper;
    upper.reserve(prefixes_.size());
    for (const Word& s : prefixes_)
        upper.push_back(row(s));
    std::map<std::vector<bool>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < prefixes_.size(); ++i)
        groups[upper[i]].push_back(i);

    for (std::size_t i = 0; i < prefixes_.size(); ++i) {
        for (std::size_t j : groups[upper[i]]) {
            if (j <= i)
                continue;
            for (Symbol a = 0; a < alphabet_.size(); ++a) {
                Word ia = prefixes_[i].append(a);
                Word ja = prefixes_[j].append(a);
                for (const Word& e : suffixes_)
                    if (cell(ia, e) != cell(ja, e))
                        return Word{}.append(a).concat(e);
            }
        }
    }
    return std::nullopt;
}

void ObservationTable::fix(CachedMembership& oracle) {
    fill(oracle);
    for (;;) {
        if (auto t = closed_defect()) {
            add_prefix(*t);
            PhaseScope phase(oracle, "fix");
            fill(oracle);
            continue;
        }
        if (auto e = consistency_defect()) {
            add_suffix(*e);
            PhaseScope phase(oracle, "fix");
            fill(oracle);
            continue;
        }
        return;
    }
}

Hypothesis ObservationTable::hypothesis() const {
    if (auto t = closed_defect())
        throw PreconditionError("table is not closed: row of '" + format_word(alphabet_, *t) +
                                "' is missing from the upper rows");
    if (auto e = consistency_defect())
        throw PreconditionError("table is not consistent: suffix '" + format_word(alphabet_, *e) +
                                "' distinguishes equal rows");

    Hypothesis h;
    h.dfa.alphabet = alphabet_;

    std::map<std::vector<bool>, State> state_of;
    for (const Word& s : prefixes_) {
        auto r = row(s);
        if (state_of.emplace(r, static_cast<State>(h.representatives.size())).second) {
            h.representatives.push_back(s);
            h.rows.push_back(r);
        }
    }

    h.dfa.num_states = static_cast<std::uint32_t>(h.representatives.size());
    h.dfa.accepting.resize(h.dfa.num_states);
    h.dfa.delta.resize(static_cast<std::size_t>(h.dfa.num_states) * alphabet_.size());
    h.dfa.initial = state_of.at(row(Word{}));
    for (State q = 0; q < h.dfa.num_states; ++q) {
        h.dfa.accepting[q] = cell(h.representatives[q], Word{});
        for (Symbol a = 0; a < alphabet_.size(); ++a)
            h.dfa.set_next(q, a, state_of.at(row(h.representatives[q].append(a))));
    }
    h.dfa.validate();
    return h;
}

std::string ObservationTable::dump() const {
    std::ostringstream out;
    out << "T";
    for (const Word& e : suffixes_)
        out << '\t' << format_word(alphabet_, e);
    out << '\n';
    auto emit = [&](const Word& u) {
        out << format_word(alphabet_, u);
        for (const Word& e : suffixes_)
            out << '\t' << (cell(u, e) ? '1' : '0');
        out << '\n';
    };
    for (const Word& s : prefixes_)
        emit(s);
    out << "-\n";
    std::vector<Word> ext;
    extension_rows(ext);
    for (const Word& t : ext)
        if (prefix_set_.find(t) == prefix_set_.end())
            emit(t);
    return out.str();
}

}  // namespace calf
