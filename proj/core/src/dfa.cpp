#include "calf/dfa.hpp"

#include <deque>
#include <random>

namespace calf {

void Dfa::validate() const {
    if (num_states == 0)
        throw InputError("a DFA needs at least one state");
    if (alphabet.size() == 0)
        throw InputError("a DFA needs a non-empty alphabet");
    if (initial >= num_states)
        throw InputError("initial state out of range");
    if (accepting.size() != num_states)
        throw InputError("acceptance vector size does not match state count");
    if (delta.size() != static_cast<std::size_t>(num_states) * alphabet.size())
        throw InputError("transition table is not complete");
    for (State to : delta)
        if (to >= num_states)
            throw InputError("transition target out of range");
}

State run_from(const Dfa& d, State q, const Word& w) {
    for (Symbol a : w.syms) {
        if (a >= d.alphabet.size())
            throw InputError("unknown symbol index " + std::to_string(a));
        q = d.next(q, a);
    }
    return q;
}

bool eval_from(const Dfa& d, State q, const Word& w) {
    return d.accepting[run_from(d, q, w)];
}

bool eval(const Dfa& d, const Word& w) {
    return eval_from(d, d.initial, w);
}

Dfa complement(const Dfa& d) {
    Dfa c = d;
    for (std::size_t q = 0; q < c.num_states; ++q)
        c.accepting[q] = !c.accepting[q];
    return c;
}

Dfa canonical(const Dfa& d) {
    constexpr State unseen = static_cast<State>(-1);
    std::vector<State> relabel(d.num_states, unseen);
    std::vector<State> order;
    order.reserve(d.num_states);
    relabel[d.initial] = 0;
    order.push_back(d.initial);
    for (std::size_t i = 0; i < order.size(); ++i) {
        State q = order[i];
        for (Symbol a = 0; a < d.alphabet.size(); ++a) {
            State to = d.next(q, a);
            if (relabel[to] == unseen) {
                relabel[to] = static_cast<State>(order.size());
                order.push_back(to);
            }
        }
    }
    Dfa c;
    c.alphabet = d.alphabet;
    c.num_states = static_cast<std::uint32_t>(order.size());
    c.initial = 0;
    c.accepting.resize(c.num_states);
    c.delta.resize(static_cast<std::size_t>(c.num_states) * c.alphabet.size());
    for (State fresh = 0; fresh < c.num_states; ++fresh) {
        State old = order[fresh];
        c.accepting[fresh] = d.accepting[old];
        for (Symbol a = 0; a < d.alphabet.size(); ++a)
            c.set_next(fresh, a, relabel[d.next(old, a)]);
    }
    return c;
}

bool isomorphic(const Dfa& u, const Dfa& v) {
    if (u.alphabet != v.alphabet)
        throw InputError("alphabet mismatch in isomorphism check");
    Dfa cu = canonical(u);
    Dfa cv = canonical(v);
    return cu.num_states == cv.num_states && cu.accepting == cv.accepting && cu.delta == cv.delta;
}

std::optional<Word> find_counterexample(const Dfa& u, const Dfa& v) {
    if (u.alphabet != v.alphabet)
        throw InputError("alphabet mismatch in equivalence check");
    // BFS over the product automaton; first-arrival words are length-lex
    // minimal because symbols are explored in alphabet order.
    const std::size_t n = static_cast<std::size_t>(u.num_states) * v.num_states;
    std::vector<bool> seen(n, false);
    std::vector<std::pair<std::size_t, Symbol>> parent(n);
    auto id = [&](State a, State b) { return static_cast<std::size_t>(a) * v.num_states + b; };

    auto word_of = [&](std::size_t node) {
        std::vector<Symbol> rev;
        std::size_t start = id(u.initial, v.initial);
        while (node != start) {
            rev.push_back(parent[node].second);
            node = parent[node].first;
        }
        Word w;
        w.syms.assign(rev.rbegin(), rev.rend());
        return w;
    };

    std::deque<std::size_t> queue;
    std::size_t start = id(u.initial, v.initial);
    seen[start] = true;
    queue.push_back(start);
    while (!queue.empty()) {
        std::size_t node = queue.front();
        queue.pop_front();
        State a = static_cast<State>(node / v.num_states);
        State b = static_cast<State>(node % v.num_states);
        if (u.accepting[a] != v.accepting[b])
            return word_of(node);
        for (Symbol s = 0; s < u.alphabet.size(); ++s) {
            std::size_t to = id(u.next(a, s), v.next(b, s));
            if (!seen[to]) {
                seen[to] = true;
                parent[to] = {node, s};
                queue.push_back(to);
            }
        }
    }
    return std::nullopt;
}

Dfa random_dfa(std::uint64_t seed, std::uint32_t n, const Alphabet& alphabet) {
    if (n == 0)
        throw InputError("random DFA needs at least one state");
    std::mt19937_64 rng(seed);
    Dfa d;
    d.alphabet = alphabet;
    d.num_states = n;
    d.initial = 0;
    d.accepting.resize(n);
    d.delta.resize(static_cast<std::size_t>(n) * alphabet.size());
    for (State q = 0; q < n; ++q) {
        for (Symbol a = 0; a < alphabet.size(); ++a)
            d.set_next(q, a, static_cast<State>(rng() % n));
        d.accepting[q] = (rng() & 1) != 0;
    }
    return d;
}

}  // namespace calf
