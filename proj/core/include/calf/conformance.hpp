// conformance.hpp -- test-suite generation and black-box conformance runs.
//
// Suites certify equivalence of a known DFA against any black box with at
// most n states: if every suite word gets the same answer from both, the
// machines accept the same language. Suites are deduplicated and sorted by
// length then lexicographically, so counterexamples and query counts are
// reproducible.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "calf/minimization.hpp"
#include "calf/oracle.hpp"

namespace calf {

struct TestSuite {
    std::vector<Word> words;  // length-lex sorted, duplicate-free
    std::string method;       // "w" or "hsi"
    std::uint32_t bound = 0;          // the n the suite was built for
    std::uint32_t minimal_size = 0;   // states of the minimized reference
    std::vector<Word> access_words;   // S used
    std::vector<Word> separators;     // E used (w) or seed suffixes (hsi)
};

struct Verdict {
    bool pass = false;
    std::optional<Word> counterexample;
    std::uint64_t queries = 0;
};

// S' = S . A^{<= n-|U|}; suite = S'.E u E u S'.A.E u S'.
TestSuite w_method_suite(const Dfa& u, std::uint32_t n);

// Per-state identifier sets from splitting-tree paths (seeded with eps):
// each word s in S' u S'.A is tested on the identifiers of the state it
// reaches. Never observed to exceed the W-method suite.
TestSuite hsi_suite(const Dfa& u, std::uint32_t n);

// Queries the black box on each word in order; the first disagreement with
// the known DFA is the counterexample.
Verdict run_suite(const TestSuite& suite, const Dfa& known, MembershipOracle& black);

// Equivalence oracle realized by testing: for each hypothesis it generates
// a W-method suite with the trusted bound and runs it against the black
// box. A hypothesis larger than the bound is reported as a broken promise,
// not a counterexample.
class TestingEquivalence final : public EquivalenceOracle {
public:
    TestingEquivalence(std::uint32_t bound, CachedMembership& black)
        : bound_(bound), black_(&black) {}
    std::optional<Word> counterexample(const Dfa& hypothesis) override;

private:
    std::uint32_t bound_;
    CachedMembership* black_;
};

}  // namespace calf
