#include "calf/wfa_table.hpp"

namespace calf {

WfaTable::WfaTable(Alphabet alphabet) : alphabet_(std::move(alphabet)) {
    add_prefix(Word{});
    add_suffix(Word{});
}

WfaTable::WfaTable(Alphabet alphabet, const std::vector<Word>& prefixes,
                   const std::vector<Word>& suffixes)
    : alphabet_(std::move(alphabet)) {
    add_prefix(Word{});
    add_suffix(Word{});
    for (const Word& u : prefixes)
        add_prefix(u);
    for (const Word& e : suffixes)
        add_suffix(e);
}

bool WfaTable::add_prefix(const Word& u) {
    if (!prefix_set_.insert(u).second)
        return false;
    prefixes_.push_back(u);
    return true;
}

bool WfaTable::add_suffix(const Word& e) {
    if (!suffix_set_.insert(e).second)
        return false;
    suffixes_.push_back(e);
    return true;
}

void WfaTable::fill(CachedWeight& oracle) {
    std::optional<PhaseScope<CachedWeight>> phase;
    if (oracle.phase().empty())
        phase.emplace(oracle, "fill");
    std::vector<Word> labels = prefixes_;
    for (const Word& s : prefixes_)
        for (Symbol a = 0; a < alphabet_.size(); ++a)
            labels.push_back(s.append(a));
    for (const Word& u : labels) {
        auto& row_cells = cells_[u];
        for (const Word& e : suffixes_)
            if (row_cells.find(e) == row_cells.end())
                row_cells.emplace(e, oracle.query(u.concat(e)));
    }
}

Rational WfaTable::cell(const Word& u, const Word& e) const {
    auto it = cells_.find(u);
    if (it == cells_.end())
        throw PreconditionError("table not filled: missing row");
    auto jt = it->second.find(e);
    if (jt == it->second.end())
        throw PreconditionError("table not filled: missing cell");
    return jt->second;
}

RatVec WfaTable::row(const Word& u) const {
    RatVec v;
    v.reserve(suffixes_.size());
    for (const Word& e : suffixes_)
        v.push_back(cell(u, e));
    return v;
}

RatMat WfaTable::top() const {
    RatMat m;
    for (const Word& s : prefixes_)
        m.push_back(row(s));
    return m;
}

RatMat WfaTable::bottom(Symbol a) const {
    RatMat m;
    for (const Word& s : prefixes_)
        m.push_back(row(s.append(a)));
    return m;
}

std::size_t WfaTable::rank_top() const {
    return rank(top());
}

std::optional<std::pair<Word, Symbol>> WfaTable::closed_defect() const {
    RatMat upper = top();
    for (const Word& s : prefixes_)
        for (Symbol a = 0; a < alphabet_.size(); ++a)
            if (!in_span(upper, row(s.append(a))))
                return std::make_pair(s, a);
    return std::nullopt;
}

std::optional<Word> WfaTable::consistency_defect() const {
    // The transposed table has rows rev(E) and columns rev(S) for the
    // reversed language; its top matrix is top()^T and its extension row
    // for (e, a) is the e-column of bottom(a). No new queries are needed.
    RatMat columns = transpose(top());
    for (std::size_t ei = 0; ei < suffixes_.size(); ++ei) {
        for (Symbol a = 0; a < alphabet_.size(); ++a) {
            RatVec extension;
            extension.reserve(prefixes_.size());
            for (const Word& s : prefixes_)
                extension.push_back(cell(s.append(a), suffixes_[ei]));
            if (!in_span(columns, extension))
                return Word{}.append(a).concat(suffixes_[ei]);
        }
    }
    return std::nullopt;
}

void WfaTable::fix(CachedWeight& oracle) {
    fill(oracle);
    for (;;) {
        if (auto d = closed_defect()) {
            add_prefix(d->first.append(d->second));
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

Wfa WfaTable::hypothesis() const {
    if (auto d = closed_defect())
        throw PreconditionError("table is not closed: row of '" +
                                format_word(alphabet_, d->first.append(d->second)) +
                                "' is outside the span");
    if (auto e = consistency_defect())
        throw PreconditionError("table is not consistent: witness suffix '" +
                                format_word(alphabet_, *e) + "'");

    // Greedy basis in S order.
    SpanBasis span;
    RatMat basis_rows;
    std::vector<Word> basis_words;
    for (const Word& s : prefixes_) {
        RatVec r = row(s);
        if (span.add(r)) {
            basis_rows.push_back(std::move(r));
            basis_words.push_back(s);
        }
    }

    auto coords = [&](const RatVec& v) {
        auto c = solve_coords(basis_rows, v);
        if (!c)
            throw PreconditionError("row unexpectedly outside the basis span");
        return *c;
    };

    Wfa h;
    h.alphabet = alphabet_;
    h.dim = static_cast<std::uint32_t>(basis_rows.size());
    RatVec init_row;
    for (const Word& e : suffixes_)
        init_row.push_back(cell(Word{}, e));  // language of e, since eps in S
    h.init = coords(init_row);
    for (Symbol a = 0; a < alphabet_.size(); ++a) {
        RatMat m;
        for (const Word& b : basis_words)
            m.push_back(coords(row(b.append(a))));
        h.trans.push_back(std::move(m));
    }
    for (const Word& b : basis_words)
        h.out.push_back(cell(b, Word{}));
    h.validate();
    return h;
}

}  // namespace calf
