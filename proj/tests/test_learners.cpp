#include <doctest.h>

#include "calf/learners.hpp"
#include "calf/minimization.hpp"

#include "support/fixtures.hpp"

using namespace calf;
using namespace calf::testing;

namespace {

struct Setup {
    DfaOracle base;
    CachedMembership oracle;
    WhiteBoxEquivalence equivalence;
    explicit Setup(const Dfa& d) : base(d), oracle(base), equivalence(d) {}
};

std::vector<std::uint64_t> hypothesis_sizes(const LearnResult& result) {
    std::vector<std::uint64_t> sizes;
    for (const TraceEvent& e : result.events)
        if (e.kind == "hypothesis")
            sizes.push_back(e.hypothesis_states);
    return sizes;
}

}  // namespace

TEST_CASE("id with covering prefixes reconstructs the target") {
    Dfa d1 = make_d1();
    Setup s(d1);
    auto result = run_id(s.oracle, {Word{}, w(d1.alphabet, "a")});
    CHECK(isomorphic(result.hypothesis.dfa, d1));
    CHECK(result.rounds == 0);
}

TEST_CASE("id on the empty language needs only eps") {
    Dfa empty = make_empty_language();
    Setup s(empty);
    auto result = run_id(s.oracle, {Word{}});
    CHECK(result.hypothesis.dfa.num_states == 1);
    CHECK(eval(result.hypothesis.dfa, Word{}) == false);
}

TEST_CASE("id with insufficient coverage reports the uncovered row") {
    Dfa d1 = make_d1();
    Setup s(d1);
    CHECK_THROWS_WITH_AS(run_id(s.oracle, {Word{}}), doctest::Contains("'a'"), InputError);
    CHECK_THROWS_AS(run_id(s.oracle, {}), InputError);
}

TEST_CASE("dual id with separating suffixes reconstructs the target") {
    Dfa d1 = make_d1();
    Setup s(d1);
    auto result = run_dual_id(s.oracle, {Word{}});
    CHECK(isomorphic(result.hypothesis.dfa, d1));

    Dfa empty = make_empty_language();
    Setup s2(empty);
    auto r2 = run_dual_id(s2.oracle, {Word{}});
    CHECK(r2.hypothesis.dfa.num_states == 1);
}

TEST_CASE("dual id with non-separating suffixes reports a diagnostic") {
    Dfa target = make_second_symbol_a();
    Setup s(target);
    CHECK_THROWS_WITH_AS(run_dual_id(s.oracle, {Word{}}), doctest::Contains("separate"),
                         InputError);
}

TEST_CASE("the bound-based learner needs no equivalence queries") {
    Dfa d1 = make_d1();
    Setup s(d1);
    auto result = run_az(s.oracle, 2);
    CHECK(isomorphic(result.hypothesis.dfa, d1));
    CHECK(result.rounds == 0);
    CHECK(result.log.membership <= 27);  // (|S| + |S.A|) * |E| before dedup

    Dfa empty = make_empty_language();
    Setup s2(empty);
    auto r2 = run_az(s2.oracle, 1);
    CHECK(r2.hypothesis.dfa.num_states == 1);
}

TEST_CASE("a too-small bound is flagged as an invariant violation") {
    Dfa target = make_second_symbol_a();  // minimal size 4
    Setup s(target);
    CHECK_THROWS_AS(run_az(s.oracle, 2), InvariantError);
    CHECK_THROWS_AS(run_az(s.oracle, 0), InputError);
}

TEST_CASE("lstar learns the even-a machine in at most two rounds") {
    Dfa d1 = make_d1();
    Setup s(d1);
    auto result = run_lstar(s.oracle, s.equivalence);
    CHECK(isomorphic(result.hypothesis.dfa, d1));
    CHECK(result.rounds <= 2);
    CHECK(result.log.equivalence_rounds == result.rounds);
}

TEST_CASE("lstar on the empty language finishes in one round") {
    Dfa empty = make_empty_language();
    Setup s(empty);
    auto result = run_lstar(s.oracle, s.equivalence);
    CHECK(result.rounds == 1);
    CHECK(result.hypothesis.dfa.num_states == 1);
}

TEST_CASE("lstar hypothesis sizes strictly increase across rounds") {
    Dfa target = make_second_symbol_a();
    Setup s(target);
    auto result = run_lstar(s.oracle, s.equivalence);
    CHECK(isomorphic(result.hypothesis.dfa, target));
    auto sizes = hypothesis_sizes(result);
    REQUIRE(sizes.size() >= 2);  // needs counterexamples
    for (std::size_t i = 1; i < sizes.size(); ++i)
        CHECK(sizes[i] > sizes[i - 1]);
    CHECK(result.rounds <= 4);
}

TEST_CASE("kv mirrors lstar on the standard examples") {
    Dfa d1 = make_d1();
    Setup s(d1);
    auto result = run_kv(s.oracle, s.equivalence);
    CHECK(isomorphic(result.hypothesis.dfa, d1));

    Dfa empty = make_empty_language();
    Setup s2(empty);
    auto r2 = run_kv(s2.oracle, s2.equivalence);
    CHECK(r2.hypothesis.dfa.num_states == 1);
    CHECK(r2.rounds == 1);

    Dfa target = make_second_symbol_a();
    Setup s3(target);
    auto r3 = run_kv(s3.oracle, s3.equivalence);
    CHECK(isomorphic(r3.hypothesis.dfa, target));
    CHECK(r3.rounds <= 4);
}

TEST_CASE("kv consistency fixes stay within the column budget") {
    Dfa target = make_second_symbol_a();
    Setup s(target);
    auto result = run_kv(s.oracle, s.equivalence);
    bool saw_fix = false;
    for (const TraceEvent& e : result.events)
        if (e.kind == "consistency-fix") {
            saw_fix = true;
            CHECK(e.wire_cost <= e.budget);
        }
    CHECK(saw_fix);
}

TEST_CASE("both equivalence-driven learners match on random targets") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Dfa target = minimize(random_dfa(seed, 2 + seed % 10, ab()));
        Setup s1(target), s2(target);
        auto lstar = run_lstar(s1.oracle, s1.equivalence);
        auto kv = run_kv(s2.oracle, s2.equivalence);
        CHECK(isomorphic(lstar.hypothesis.dfa, target));
        CHECK(isomorphic(kv.hypothesis.dfa, target));
        CHECK(lstar.rounds <= target.num_states);
        CHECK(kv.rounds <= target.num_states);
    }
}

TEST_CASE("a counterexample that distinguishes nothing is rejected") {
    struct Liar final : EquivalenceOracle {
        std::optional<Word> counterexample(const Dfa&) override {
            // eps is classified correctly by the first hypothesis.
            return Word{};
        }
    };
    Dfa empty = make_empty_language();
    DfaOracle base(empty);
    CachedMembership oracle(base);
    Liar liar;
    CHECK_THROWS_AS(run_lstar(oracle, liar), InvariantError);
}

TEST_CASE("the round cap trips on a stubborn oracle") {
    Dfa d1 = make_d1();
    Setup s(d1);
    LearnerConfig config;
    config.max_equivalence_rounds = 0;
    CHECK_THROWS_WITH_AS(run_lstar(s.oracle, s.equivalence, config), doctest::Contains("cap"),
                         InvariantError);
}

TEST_CASE("trace recording captures defects and counterexamples") {
    Dfa target = make_second_symbol_a();
    Setup s(target);
    LearnerConfig config;
    config.record_trace = true;
    auto result = run_lstar(s.oracle, s.equivalence, config);
    CHECK(!result.trace.empty());
    bool saw_counterexample = false;
    for (const std::string& line : result.trace)
        if (line.find("counterexample") != std::string::npos)
            saw_counterexample = true;
    CHECK(saw_counterexample);
}

TEST_CASE("covered prefixes force agreement on the word itself") {
    // Intermediate hypotheses already classify correctly every word whose
    // prefixes all have state-equivalent representatives in S.
    Dfa target = make_second_symbol_a();
    DfaOracle base(target);
    CachedMembership oracle(base);
    ObservationTable table(target.alphabet);
    table.add_prefix(w(target.alphabet, "a"));
    table.add_prefix(w(target.alphabet, "a a"));
    table.fix(oracle);
    Hypothesis h = table.hypothesis();

    auto reaches = [&](const Word& word) { return run_from(target, target.initial, word); };
    std::size_t covered = 0;
    for (const Word& z : words_up_to(target.alphabet, 5)) {
        bool all_prefixes_covered = true;
        for (const Word& p : prefixes(z)) {
            bool found = false;
            for (const Word& s : table.prefixes())
                if (reaches(s) == reaches(p))
                    found = true;
            all_prefixes_covered = all_prefixes_covered && found;
        }
        if (all_prefixes_covered) {
            ++covered;
            CHECK(eval(h.dfa, z) == eval(target, z));
        }
    }
    CHECK(covered > 0);
}

TEST_CASE("tables and trees share one query cache per oracle") {
    Dfa d1 = make_d1();
    DfaOracle base(d1);
    CachedMembership oracle(base);
    ObservationTable table(d1.alphabet);
    table.fix(oracle);
    std::uint64_t wire_after_table = oracle.log().wire();

    ClassificationTree tree(d1.alphabet);
    tree.add_word(w(d1.alphabet, "a"), oracle);
    tree.split(tree.leaf_of(Word{}), Word{}, oracle);
    CHECK(tree.sift(w(d1.alphabet, "b"), oracle) == tree.leaf_of(Word{}));
    // Everything the tree needed was already answered for the table.
    CHECK(oracle.log().wire() == wire_after_table);
    CHECK(oracle.log().cache_hits > 0);
}
