#include "calf/wfa_conformance.hpp"

#include <algorithm>

namespace calf {

TestSuite wfa_w_method(const Wfa& u, std::uint32_t n) {
    WfaReduction reduced = minimize_with_words(u);
    const Wfa& m = reduced.machine;
    if (n < m.dim)
        throw InputError("bound " + std::to_string(n) + " is below the minimal dimension " +
                         std::to_string(m.dim));

    TestSuite suite;
    suite.method = "w";
    suite.bound = n;
    suite.minimal_size = m.dim;
    suite.access_words = reduced.access_words;
    suite.separators = reduced.separators;
    // The covering argument needs eps in S; a zero machine yields empty
    // word sets, so seed both.
    if (suite.access_words.empty())
        suite.access_words.emplace_back();
    if (suite.separators.empty())
        suite.separators.emplace_back();

    std::vector<Word> sprime;
    for (const Word& s : suite.access_words)
        for (const Word& w : words_up_to(u.alphabet, n - m.dim))
            sprime.push_back(s.concat(w));

    std::vector<Word> words;
    for (const Word& s : sprime) {
        for (const Word& e : suite.separators) {
            words.push_back(s.concat(e));
            for (Symbol a = 0; a < u.alphabet.size(); ++a)
                words.push_back(s.append(a).concat(e));
        }
        words.push_back(s);
    }
    words.insert(words.end(), suite.separators.begin(), suite.separators.end());
    std::sort(words.begin(), words.end(), length_lex_less);
    words.erase(std::unique(words.begin(), words.end()), words.end());
    suite.words = std::move(words);
    return suite;
}

WfaVerdict run_wfa_suite(const TestSuite& suite, const Wfa& known, WeightOracle& black) {
    if (known.alphabet != black.alphabet())
        throw InputError("alphabet mismatch between known WFA and black box");
    WfaVerdict v;
    for (const Word& w : suite.words) {
        Rational answer;
        try {
            answer = black.query(w);
        } catch (const Error& e) {
            throw TransportError(std::string(e.what()) + " (after " + std::to_string(v.queries) +
                                 " of " + std::to_string(suite.words.size()) + " suite words)");
        }
        ++v.queries;
        Rational expected = eval(known, w);
        if (answer != expected) {
            v.pass = false;
            v.mismatch = WfaMismatch{w, expected, answer};
            return v;
        }
    }
    v.pass = true;
    return v;
}

std::optional<WfaMismatch> WfaTestingEquivalence::counterexample(const Wfa& hypothesis) {
    Wfa m = minimize(hypothesis);
    if (m.dim > bound_)
        throw InputError("hypothesis has dimension " + std::to_string(m.dim) +
                         ", above the promised bound " + std::to_string(bound_));
    TestSuite suite = wfa_w_method(hypothesis, bound_);
    PhaseScope phase(*black_, "test");
    WfaVerdict v = run_wfa_suite(suite, hypothesis, *black_);
    return v.mismatch;
}

}  // namespace calf
