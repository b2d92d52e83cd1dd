// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Run all or a single one with --criterion N. Exit 0 iff everything run
// passed.

#include <chrono>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "calf/conformance.hpp"
#include "calf/dfa_io.hpp"
#include "calf/learners.hpp"
#include "calf/minimization.hpp"
#include "calf/remote.hpp"
#include "calf/wfa_conformance.hpp"
#include "calf/wfa_learners.hpp"

#include "support/brute.hpp"
#include "support/fixtures.hpp"
#include "support/tmpdir.hpp"

using namespace calf;
using namespace calf::testing;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

Alphabet alphabet_of_size(std::uint32_t k) {
    std::vector<std::string> tokens;
    for (std::uint32_t i = 0; i < k; ++i)
        tokens.push_back(std::string(1, static_cast<char>('a' + i)));
    return Alphabet(tokens);
}

// 200 minimized targets with n <= 20 states and |A| <= 3. State counts are
// drawn per alphabet size so that the bound-based learner's full table
// (S = E = A^{<=n-1}) stays at desk scale for criterion 2.
std::vector<Dfa> dfa_corpus() {
    std::vector<Dfa> targets;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::mt19937_64 rng(seed * 77 + 5);
        std::uint32_t k = 1 + rng() % 3;
        std::uint32_t max_n = k == 1 ? 20 : k == 2 ? 8 : 6;
        std::uint32_t n = 1 + rng() % max_n;
        targets.push_back(minimize(random_dfa(rng(), n, alphabet_of_size(k))));
    }
    return targets;
}

std::vector<std::uint64_t> hypothesis_sizes(const LearnResult& result) {
    std::vector<std::uint64_t> sizes;
    for (const TraceEvent& e : result.events)
        if (e.kind == "hypothesis")
            sizes.push_back(e.hypothesis_states);
    return sizes;
}

Outcome criterion_1() {
    std::size_t failures = 0;
    std::uint64_t max_rounds_seen = 0;
    auto targets = dfa_corpus();
    for (const Dfa& target : targets) {
        for (bool use_tree : {false, true}) {
            DfaOracle base(target);
            CachedMembership oracle(base);
            WhiteBoxEquivalence equivalence(target);
            LearnResult result = use_tree ? run_kv(oracle, equivalence)
                                          : run_lstar(oracle, equivalence);
            if (!isomorphic(result.hypothesis.dfa, target) ||
                result.rounds > target.num_states)
                ++failures;
            max_rounds_seen = std::max(max_rounds_seen, result.rounds);
        }
    }
    std::ostringstream detail;
    detail << targets.size() << " targets x {lstar, kv}, " << failures
           << " failures, max rounds " << max_rounds_seen;
    return {failures == 0, detail.str()};
}

Outcome criterion_2() {
    std::size_t failures = 0;
    auto targets = dfa_corpus();
    for (const Dfa& target : targets) {
        auto access = reachable_part(target).second.words;
        auto separators = moore_merge(target).second.words;
        {
            DfaOracle base(target);
            CachedMembership oracle(base);
            if (!isomorphic(run_id(oracle, access).hypothesis.dfa, target))
                ++failures;
        }
        {
            DfaOracle base(target);
            CachedMembership oracle(base);
            if (!isomorphic(run_dual_id(oracle, separators).hypothesis.dfa, target))
                ++failures;
        }
        {
            DfaOracle base(target);
            CachedMembership oracle(base);
            if (!isomorphic(run_az(oracle, target.num_states).hypothesis.dfa, target))
                ++failures;
        }
    }
    return {failures == 0,
            std::to_string(targets.size()) + " targets x {id, dual-id, az}, " +
                std::to_string(failures) + " failures"};
}

Outcome criterion_3() {
    std::size_t violations = 0;
    std::size_t rounds_checked = 0;
    for (const Dfa& target : dfa_corpus()) {
        DfaOracle base(target);
        CachedMembership oracle(base);
        WhiteBoxEquivalence equivalence(target);
        auto sizes = hypothesis_sizes(run_lstar(oracle, equivalence));
        for (std::size_t i = 1; i < sizes.size(); ++i) {
            ++rounds_checked;
            if (sizes[i] <= sizes[i - 1])
                ++violations;
        }
    }
    return {violations == 0, std::to_string(rounds_checked) +
                                 " counterexample rounds checked, " +
                                 std::to_string(violations) + " non-increasing"};
}

Outcome criterion_4() {
    std::size_t failures = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        std::mt19937_64 rng(seed * 131 + 17);
        std::uint32_t k = 1 + rng() % 3;
        std::uint32_t n = 1 + rng() % 10;
        Dfa d = random_dfa(rng(), n, alphabet_of_size(k));
        if (!isomorphic(minimize(d), brute_nerode_quotient(d)))
            ++failures;
        if (!isomorphic(splitting_tree_minimize(d).first, moore_merge(d).first))
            ++failures;
    }
    return {failures == 0, "300 random machines, " + std::to_string(failures) + " mismatches"};
}

Outcome criterion_5() {
    // Every complete DFA with up to 3 states over {a,b}, deduplicated by
    // canonical form.
    std::vector<Dfa> machines;
    std::set<std::string> seen;
    for (std::uint32_t k = 1; k <= 3; ++k)
        for (Dfa& d : enumerate_dfas(k, ab()))
            if (seen.insert(serialize(canonical(d))).second)
                machines.push_back(canonical(d));

    std::vector<TestSuite> suites;
    suites.reserve(machines.size());
    for (const Dfa& u : machines)
        suites.push_back(w_method_suite(u, 3));

    // Sample deterministically if the full product is too large; never
    // below 10000 pairs.
    std::size_t total = machines.size() * machines.size();
    std::size_t stride = total > 2'000'000 ? total / 1'000'000 : 1;
    std::size_t failures = 0, pairs = 0;
    for (std::size_t flat = 0; flat < total; flat += stride) {
        std::size_t i = flat / machines.size();
        std::size_t j = flat % machines.size();
        DfaOracle black(machines[j]);
        bool pass = run_suite(suites[i], machines[i], black).pass;
        bool equal = !find_counterexample(machines[i], machines[j]).has_value();
        if (pass != equal)
            ++failures;
        ++pairs;
    }
    std::ostringstream detail;
    detail << machines.size() << " canonical machines, " << pairs << " pairs, " << failures
           << " disagreements";
    return {failures == 0 && pairs >= 10'000, detail.str()};
}

Outcome criterion_6() {
    std::size_t budget_violations = 0, fixes = 0, kv_cheaper = 0;
    std::uint64_t kv_total = 0, lstar_total = 0;
    const std::size_t family = 50;
    for (std::uint64_t seed = 0; seed < family; ++seed) {
        std::mt19937_64 rng(seed * 997 + 3);
        Dfa target = minimize(random_dfa(rng(), 4 + rng() % 9, ab()));

        DfaOracle base_kv(target);
        CachedMembership oracle_kv(base_kv);
        WhiteBoxEquivalence eq_kv(target);
        LearnResult kv = run_kv(oracle_kv, eq_kv);

        DfaOracle base_ls(target);
        CachedMembership oracle_ls(base_ls);
        WhiteBoxEquivalence eq_ls(target);
        LearnResult lstar = run_lstar(oracle_ls, eq_ls);

        for (const TraceEvent& e : kv.events)
            if (e.kind == "consistency-fix") {
                ++fixes;
                if (e.wire_cost > e.budget)
                    ++budget_violations;
            }
        // Membership cost on the wire: repeats answered from the cache are
        // free by the accounting-exactness invariant.
        kv_total += kv.log.wire();
        lstar_total += lstar.log.wire();
        if (kv.log.wire() <= lstar.log.wire())
            ++kv_cheaper;
    }
    std::ostringstream detail;
    detail << fixes << " tree consistency fixes, " << budget_violations
           << " over budget; wire totals kv=" << kv_total << " lstar=" << lstar_total
           << "; kv <= lstar on " << kv_cheaper << "/" << family;
    return {budget_violations == 0 && kv_cheaper * 10 >= family * 9, detail.str()};
}

Outcome criterion_7() {
    std::size_t failures = 0;
    std::uint64_t max_counterexamples = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(seed * 53 + 29);
        std::uint32_t dim = 1 + rng() % 4;
        Wfa target = random_wfa(rng(), dim, ab(), -1, 1);
        std::uint32_t minimal_dim = minimize(target).dim;

        WfaOracle base(target);
        CachedWeight oracle(base);
        WhiteBoxWfaEquivalence equivalence(target);
        WfaLearnResult result = run_wfa_lstar(oracle, equivalence);

        std::uint64_t counterexamples = result.rounds - 1;
        if (find_counterexample(result.hypothesis, target).has_value() ||
            result.hypothesis.dim != minimal_dim || counterexamples > minimal_dim)
            ++failures;
        max_counterexamples = std::max(max_counterexamples, counterexamples);
    }
    std::ostringstream detail;
    detail << "100 targets, " << failures << " failures, max counterexamples processed "
           << max_counterexamples;
    return {failures == 0, detail.str()};
}

Outcome criterion_8() {
    std::size_t closed = 0, violations = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::mt19937_64 rng(seed * 389 + 11);
        Wfa target = random_wfa(rng(), 1 + rng() % 3, ab(), -1, 1);
        WfaOracle base(target);
        CachedWeight oracle(base);
        WfaTable table(target.alphabet);
        if (seed % 2 == 0) {
            // Random word sets.
            for (const Word& word : words_up_to(target.alphabet, 2)) {
                if (rng() & 1)
                    table.add_prefix(word);
                if (rng() & 1)
                    table.add_suffix(word);
            }
            table.fill(oracle);
        } else {
            table.fix(oracle);  // converged tables are transpose-closed
        }
        if (table.consistency_defect().has_value())
            continue;
        ++closed;
        std::vector<RatMat> bottoms;
        for (Symbol a = 0; a < target.alphabet.size(); ++a)
            bottoms.push_back(table.bottom(a));
        if (!kernel_confirms_consistency(table.top(), bottoms))
            ++violations;
    }
    std::ostringstream detail;
    detail << closed << "/200 tables transpose-closed, " << violations
           << " kernel counterexamples";
    return {violations == 0 && closed >= 100, detail.str()};
}

Outcome criterion_9() {
    std::size_t violations = 0, hypotheses = 0;
    for (const Dfa& target : dfa_corpus()) {
        auto check_run = [&](const LearnResult& result) {
            for (std::uint64_t size : hypothesis_sizes(result)) {
                ++hypotheses;
                if (size > target.num_states)
                    ++violations;
            }
        };
        {
            DfaOracle base(target);
            CachedMembership oracle(base);
            WhiteBoxEquivalence equivalence(target);
            check_run(run_lstar(oracle, equivalence));
        }
        {
            DfaOracle base(target);
            CachedMembership oracle(base);
            WhiteBoxEquivalence equivalence(target);
            check_run(run_kv(oracle, equivalence));
        }
        {
            DfaOracle base(target);
            CachedMembership oracle(base);
            check_run(run_id(oracle, reachable_part(target).second.words));
        }
        {
            DfaOracle base(target);
            CachedMembership oracle(base);
            check_run(run_dual_id(oracle, moore_merge(target).second.words));
        }
        {
            DfaOracle base(target);
            CachedMembership oracle(base);
            check_run(run_az(oracle, target.num_states));
        }
    }
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(seed * 53 + 29);
        std::uint32_t dim = 1 + rng() % 4;
        Wfa target = random_wfa(rng(), dim, ab(), -1, 1);
        std::uint32_t minimal_dim = minimize(target).dim;
        WfaOracle base(target);
        CachedWeight oracle(base);
        WhiteBoxWfaEquivalence equivalence(target);
        WfaLearnResult result = run_wfa_lstar(oracle, equivalence);
        for (std::size_t rank : result.rank_trace) {
            ++hypotheses;
            if (rank > minimal_dim)
                ++violations;
        }
    }
    return {violations == 0, std::to_string(hypotheses) + " hypotheses checked, " +
                                 std::to_string(violations) + " above the target size"};
}

Outcome criterion_10() {
    TempDir dir;
    Dfa d1 = make_d1();
    std::string d1_path = dir.file("d1.dfa", serialize(d1));
    const std::string tool = CALF_TOOL_PATH;

    // Library path: spawned process oracle, wire accounting cross-checked
    // against the session's own counter.
    {
        auto session = RemoteSession::spawn(tool + " serve --in " + d1_path);
        RemoteMembership base(*session);
        CachedMembership oracle(base);
        TestingEquivalence equivalence(2, oracle);
        LearnResult result = run_lstar(oracle, equivalence);
        if (!isomorphic(result.hypothesis.dfa, d1))
            return {false, "library path learned a wrong machine"};
        if (session->wire_queries() != result.log.wire())
            return {false, "session wire count " + std::to_string(session->wire_queries()) +
                               " != log wire " + std::to_string(result.log.wire())};
        session->bye();
    }

    // CLI path: same run through the shipped binary.
    std::string out_path = (dir.path / "learned.dfa").string();
    std::string stats_path = (dir.path / "stats.json").string();
    std::string command = tool + " learn --algo lstar --mode dfa --target 'exec:" + tool +
                          " serve --in " + d1_path + "' --bound 2 --out " + out_path +
                          " --stats json > " + stats_path;
    if (std::system(command.c_str()) != 0)
        return {false, "cli run failed"};
    std::ifstream fin(out_path);
    std::stringstream text;
    text << fin.rdbuf();
    if (!isomorphic(parse_dfa(text.str()), d1))
        return {false, "cli learned a wrong machine"};
    std::ifstream sin(stats_path);
    nlohmann::json stats = nlohmann::json::parse(sin);
    std::uint64_t membership = stats.at("membership").get<std::uint64_t>();
    std::uint64_t cache_hits = stats.at("cache_hits").get<std::uint64_t>();
    std::uint64_t wire = stats.at("wire").get<std::uint64_t>();
    if (wire != membership - cache_hits)
        return {false, "stats wire count inconsistent"};
    return {true, "library and cli paths both learned the target, wire=" +
                      std::to_string(wire) + " of " + std::to_string(membership) +
                      " membership"};
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            only = std::atoi(argv[i + 1]);

    using Criterion = std::function<Outcome()>;
    std::vector<std::pair<std::string, Criterion>> criteria = {
        {"learner exactness (lstar, kv)", criterion_1},
        {"id / dual-id / az exactness", criterion_2},
        {"counterexample progress", criterion_3},
        {"minimization vs brute force", criterion_4},
        {"w-method soundness and completeness", criterion_5},
        {"tree learner query budgets", criterion_6},
        {"weighted learner exactness", criterion_7},
        {"transpose-closedness implies consistency", criterion_8},
        {"hypotheses never exceed the target", criterion_9},
        {"end-to-end black-box run", criterion_10},
    };

    bool all_pass = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        int number = static_cast<int>(i) + 1;
        if (only != 0 && only != number)
            continue;
        auto started = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              started)
                        .count();
        std::cout << "criterion " << number << " [" << criteria[i].first << "]: "
                  << (outcome.pass ? "PASS" : "FAIL") << " (" << outcome.detail << ", "
                  << static_cast<long>(ms) << " ms)" << std::endl;
        all_pass = all_pass && outcome.pass;
    }
    return all_pass ? 0 : 1;
}
