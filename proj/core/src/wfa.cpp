#include "calf/wfa.hpp"

#include <deque>
#include <random>

namespace calf {

void Wfa::validate() const {
    if (alphabet.size() == 0)
        throw InputError("a weighted automaton needs a non-empty alphabet");
    if (init.size() != dim || out.size() != dim)
        throw InputError("initial/output vector length does not match the dimension");
    if (trans.size() != alphabet.size())
        throw InputError("one transition matrix per symbol required");
    for (const RatMat& m : trans) {
        if (m.size() != dim)
            throw InputError("transition matrix is not dim x dim");
        for (const RatVec& row : m)
            if (row.size() != dim)
                throw InputError("transition matrix is not dim x dim");
    }
}

Rational eval(const Wfa& w, const Word& word) {
    RatVec v = w.init;
    for (Symbol a : word.syms) {
        if (a >= w.alphabet.size())
            throw InputError("unknown symbol index " + std::to_string(a));
        v = vec_mat(v, w.trans[a]);
    }
    return dot(v, w.out);
}

namespace {

// Difference machine computing L_u - L_v on the direct sum.
Wfa difference(const Wfa& u, const Wfa& v) {
    Wfa d;
    d.alphabet = u.alphabet;
    d.dim = u.dim + v.dim;
    d.init = u.init;
    d.init.insert(d.init.end(), v.init.begin(), v.init.end());
    d.out = u.out;
    for (const Rational& r : v.out)
        d.out.push_back(-r);
    for (Symbol a = 0; a < u.alphabet.size(); ++a) {
        RatMat m(d.dim, RatVec(d.dim, Rational(0)));
        for (std::size_t i = 0; i < u.dim; ++i)
            for (std::size_t j = 0; j < u.dim; ++j)
                m[i][j] = u.trans[a][i][j];
        for (std::size_t i = 0; i < v.dim; ++i)
            for (std::size_t j = 0; j < v.dim; ++j)
                m[u.dim + i][u.dim + j] = v.trans[a][i][j];
        d.trans.push_back(std::move(m));
    }
    return d;
}

struct ForwardSpan {
    RatMat vectors;           // actual forward vectors, in discovery order
    std::vector<Word> words;  // the word producing each vector
};

// Breadth-first span of {init * M(w)}; prunes vectors already spanned.
ForwardSpan forward_span(const Wfa& w) {
    ForwardSpan result;
    SpanBasis basis;
    std::deque<std::size_t> queue;
    if (basis.add(w.init)) {
        result.vectors.push_back(w.init);
        result.words.emplace_back();
        queue.push_back(0);
    }
    while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        for (Symbol a = 0; a < w.alphabet.size(); ++a) {
            RatVec next = vec_mat(result.vectors[i], w.trans[a]);
            if (basis.add(next)) {
                result.words.push_back(result.words[i].append(a));
                result.vectors.push_back(std::move(next));
                queue.push_back(result.vectors.size() - 1);
            }
        }
    }
    return result;
}

// Projects the machine onto the row space spanned by the given vectors;
// requires that space to be invariant under every transition.
Wfa project(const Wfa& w, const RatMat& span_rows) {
    Wfa p;
    p.alphabet = w.alphabet;
    p.dim = static_cast<std::uint32_t>(span_rows.size());
    auto coords = [&](const RatVec& v) {
        auto c = solve_coords(span_rows, v);
        if (!c)
            throw InvariantError("projection space is not invariant");
        return *c;
    };
    p.init = coords(w.init);
    for (Symbol a = 0; a < w.alphabet.size(); ++a) {
        RatMat m;
        for (const RatVec& row : span_rows)
            m.push_back(coords(vec_mat(row, w.trans[a])));
        p.trans.push_back(std::move(m));
    }
    for (const RatVec& row : span_rows)
        p.out.push_back(dot(row, w.out));
    return p;
}

Wfa reversed(const Wfa& w) {
    Wfa r;
    r.alphabet = w.alphabet;
    r.dim = w.dim;
    r.init = w.out;
    r.out = w.init;
    for (Symbol a = 0; a < w.alphabet.size(); ++a)
        r.trans.push_back(transpose(w.trans[a]));
    return r;
}

}  // namespace

std::optional<WfaMismatch> find_counterexample(const Wfa& u, const Wfa& v) {
    if (u.alphabet != v.alphabet)
        throw InputError("alphabet mismatch in equivalence check");
    Wfa d = difference(u, v);
    SpanBasis basis;
    std::deque<std::pair<Word, RatVec>> queue;
    basis.add(d.init);
    queue.emplace_back(Word{}, d.init);
    while (!queue.empty()) {
        auto [word, vec] = std::move(queue.front());
        queue.pop_front();
        if (dot(vec, d.out) != 0)
            return WfaMismatch{word, eval(u, word), eval(v, word)};
        for (Symbol a = 0; a < d.alphabet.size(); ++a) {
            RatVec next = vec_mat(vec, d.trans[a]);
            if (basis.add(next))
                queue.emplace_back(word.append(a), std::move(next));
        }
    }
    return std::nullopt;
}

Wfa minimize(const Wfa& w) {
    w.validate();
    Wfa forward = project(w, forward_span(w).vectors);
    Wfa rev = reversed(forward);
    Wfa backward = project(rev, forward_span(rev).vectors);
    return reversed(backward);
}

WfaReduction minimize_with_words(const Wfa& w) {
    WfaReduction r;
    r.machine = minimize(w);
    r.access_words = forward_span(r.machine).words;
    ForwardSpan backward = forward_span(reversed(r.machine));
    for (const Word& word : backward.words)
        r.separators.push_back(word.reversed());
    return r;
}

Wfa random_wfa(std::uint64_t seed, std::uint32_t dim, const Alphabet& alphabet, int lo, int hi) {
    if (hi < lo)
        throw InputError("empty entry range for random weighted automaton");
    std::mt19937_64 rng(seed);
    auto entry = [&]() {
        return Rational(static_cast<long>(lo) +
                        static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)));
    };
    Wfa w;
    w.alphabet = alphabet;
    w.dim = dim;
    for (std::uint32_t i = 0; i < dim; ++i)
        w.init.push_back(entry());
    for (Symbol a = 0; a < alphabet.size(); ++a) {
        RatMat m(dim, RatVec(dim));
        for (std::uint32_t i = 0; i < dim; ++i)
            for (std::uint32_t j = 0; j < dim; ++j)
                m[i][j] = entry();
        w.trans.push_back(std::move(m));
    }
    for (std::uint32_t i = 0; i < dim; ++i)
        w.out.push_back(entry());
    return w;
}

}  // namespace calf
