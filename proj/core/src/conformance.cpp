#include "calf/conformance.hpp"

#include <algorithm>
#include <set>

namespace calf {

namespace {

std::vector<Word> sorted_dedup(std::vector<Word> words) {
    std::sort(words.begin(), words.end(), length_lex_less);
    words.erase(std::unique(words.begin(), words.end()), words.end());
    return words;
}

std::vector<Word> explore(const std::vector<Word>& base, const Alphabet& alphabet,
                          std::uint32_t extra) {
    std::vector<Word> out;
    for (const Word& s : base)
        for (const Word& w : words_up_to(alphabet, extra))
            out.push_back(s.concat(w));
    return out;
}

}  // namespace

TestSuite w_method_suite(const Dfa& u, std::uint32_t n) {
    Dfa m = minimize(u);
    if (n < m.num_states)
        throw InputError("bound " + std::to_string(n) + " is below the minimal size " +
                         std::to_string(m.num_states));

    TestSuite suite;
    suite.method = "w";
    suite.bound = n;
    suite.minimal_size = m.num_states;
    suite.access_words = reachable_part(m).second.words;
    suite.separators = moore_merge(m).second.words;

    std::vector<Word> sprime = explore(suite.access_words, m.alphabet, n - m.num_states);
    std::vector<Word> words;
    for (const Word& s : sprime) {
        for (const Word& e : suite.separators) {
            words.push_back(s.concat(e));                       // S'.E
            for (Symbol a = 0; a < m.alphabet.size(); ++a)
                words.push_back(s.append(a).concat(e));         // S'.A.E
        }
        words.push_back(s);                                     // S'
    }
    words.insert(words.end(), suite.separators.begin(), suite.separators.end());  // E
    suite.words = sorted_dedup(std::move(words));
    return suite;
}

TestSuite hsi_suite(const Dfa& u, std::uint32_t n) {
    Dfa m = minimize(u);
    if (n < m.num_states)
        throw InputError("bound " + std::to_string(n) + " is below the minimal size " +
                         std::to_string(m.num_states));

    TestSuite suite;
    suite.method = "hsi";
    suite.bound = n;
    suite.minimal_size = m.num_states;
    suite.access_words = reachable_part(m).second.words;
    auto [quotient, tree] = splitting_tree_minimize(m);
    suite.separators.emplace_back();  // eps seeds every identifier set

    // identifiers[q] = eps plus the splitting-tree path labels of q.
    std::vector<std::vector<Word>> identifiers(m.num_states);
    for (State q = 0; q < m.num_states; ++q) {
        identifiers[q].emplace_back();
        for (const Word& label : tree.identifiers(q))
            identifiers[q].push_back(label);
    }

    std::vector<Word> sprime = explore(suite.access_words, m.alphabet, n - m.num_states);
    std::vector<Word> probes = sprime;
    for (const Word& s : sprime)
        for (Symbol a = 0; a < m.alphabet.size(); ++a)
            probes.push_back(s.append(a));

    std::vector<Word> words;
    for (const Word& s : probes)
        for (const Word& h : identifiers[run_from(m, m.initial, s)])
            words.push_back(s.concat(h));
    suite.words = sorted_dedup(std::move(words));
    return suite;
}

Verdict run_suite(const TestSuite& suite, const Dfa& known, MembershipOracle& black) {
    if (known.alphabet != black.alphabet())
        throw InputError("alphabet mismatch between known DFA and black box");
    Verdict v;
    for (const Word& w : suite.words) {
        bool answer;
        try {
            answer = black.query(w);
        } catch (const Error& e) {
            throw TransportError(std::string(e.what()) + " (after " + std::to_string(v.queries) +
                                 " of " + std::to_string(suite.words.size()) + " suite words)");
        }
        ++v.queries;
        if (answer != eval(known, w)) {
            v.pass = false;
            v.counterexample = w;
            return v;
        }
    }
    v.pass = true;
    return v;
}

std::optional<Word> TestingEquivalence::counterexample(const Dfa& hypothesis) {
    Dfa m = minimize(hypothesis);
    if (m.num_states > bound_)
        throw InputError("hypothesis has " + std::to_string(m.num_states) +
                         " states, above the promised bound " + std::to_string(bound_));
    TestSuite suite = w_method_suite(hypothesis, bound_);
    PhaseScope phase(*black_, "test");
    Verdict v = run_suite(suite, hypothesis, *black_);
    return v.counterexample;
}

}  // namespace calf
