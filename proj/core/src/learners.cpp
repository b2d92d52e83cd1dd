#include "calf/learners.hpp"

#include <set>
#include <sstream>

namespace calf {

namespace {

// Distinct words in S u S.A; the cost of adding one table column.
std::uint64_t column_budget(const Alphabet& alphabet, const std::vector<Word>& prefixes) {
    std::set<Word> labels(prefixes.begin(), prefixes.end());
    for (const Word& s : prefixes)
        for (Symbol a = 0; a < alphabet.size(); ++a)
            labels.insert(s.append(a));
    return labels.size();
}

void note(LearnResult& result, const LearnerConfig& config, const std::string& line) {
    if (config.record_trace)
        result.trace.push_back(line);
}

// Runs the closedness/consistency loop while logging one event per fix.
void fix_table(ObservationTable& table, CachedMembership& oracle, LearnResult& result,
               const LearnerConfig& config) {
    table.fill(oracle);
    for (;;) {
        if (auto t = table.closed_defect()) {
            std::uint64_t before = oracle.log().wire();
            table.add_prefix(*t);
            {
                PhaseScope phase(oracle, "fix");
                table.fill(oracle);
            }
            result.events.push_back({"closedness-fix", *t, 0, oracle.log().wire() - before, 0});
            note(result, config,
                 "closedness defect '" + format_word(table.alphabet(), *t) + "' added to S");
            continue;
        }
        if (auto e = table.consistency_defect()) {
            std::uint64_t before = oracle.log().wire();
            std::uint64_t budget = column_budget(table.alphabet(), table.prefixes());
            table.add_suffix(*e);
            {
                PhaseScope phase(oracle, "fix");
                table.fill(oracle);
            }
            result.events.push_back(
                {"consistency-fix", *e, 0, oracle.log().wire() - before, budget});
            note(result, config,
                 "consistency defect: suffix '" + format_word(table.alphabet(), *e) +
                     "' added to E");
            continue;
        }
        return;
    }
}

void record_hypothesis(LearnResult& result, const LearnerConfig& config, const Hypothesis& h) {
    result.events.push_back({"hypothesis", Word{}, h.dfa.num_states, 0, 0});
    note(result, config, "hypothesis with " + std::to_string(h.dfa.num_states) + " states");
}

std::optional<Word> ask_equivalence(CachedMembership& oracle, EquivalenceOracle& equivalence,
                                    LearnResult& result, const LearnerConfig& config,
                                    const Dfa& hypothesis) {
    if (result.rounds >= config.max_equivalence_rounds)
        throw InvariantError("equivalence round cap (" +
                             std::to_string(config.max_equivalence_rounds) +
                             ") exceeded; the equivalence oracle looks faulty");
    ++result.rounds;
    oracle.log().equivalence_rounds = result.rounds;
    auto z = equivalence.counterexample(hypothesis);
    if (z) {
        // A counterexample must actually distinguish the hypothesis.
        if (oracle.query(*z) == eval(hypothesis, *z))
            throw InvariantError("counterexample '" + format_word(oracle.alphabet(), *z) +
                                 "' does not distinguish hypothesis from target");
        result.events.push_back({"counterexample", *z, 0, 0, 0});
        note(result, config,
             "counterexample '" + format_word(oracle.alphabet(), *z) + "'");
    }
    return z;
}

}  // namespace

Algorithm parse_algorithm(std::string_view name) {
    if (name == "lstar")
        return Algorithm::lstar;
    if (name == "kv")
        return Algorithm::kv;
    if (name == "id")
        return Algorithm::id;
    if (name == "az")
        return Algorithm::az;
    if (name == "dual-id")
        return Algorithm::dual_id;
    throw InputError("unknown algorithm '" + std::string(name) + "'");
}

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::lstar: return "lstar";
        case Algorithm::kv: return "kv";
        case Algorithm::id: return "id";
        case Algorithm::az: return "az";
        case Algorithm::dual_id: return "dual-id";
    }
    return "?";
}

LearnResult run_id(CachedMembership& oracle, const std::vector<Word>& given_prefixes,
                   const LearnerConfig& config) {
    if (given_prefixes.empty())
        throw InputError("the given prefix set must not be empty");
    LearnResult result;
    ObservationTable table(oracle.alphabet(), given_prefixes, {});
    table.fill(oracle);
    while (auto e = table.consistency_defect()) {
        std::uint64_t before = oracle.log().wire();
        std::uint64_t budget = column_budget(table.alphabet(), table.prefixes());
        table.add_suffix(*e);
        {
            PhaseScope phase(oracle, "fix");
            table.fill(oracle);
        }
        result.events.push_back({"consistency-fix", *e, 0, oracle.log().wire() - before, budget});
        note(result, config,
             "consistency defect: suffix '" + format_word(table.alphabet(), *e) + "' added to E");
    }
    if (auto t = table.closed_defect())
        throw InputError("the given prefixes do not reach every state: row of '" +
                         format_word(table.alphabet(), *t) + "' is uncovered");
    result.hypothesis = table.hypothesis();
    record_hypothesis(result, config, result.hypothesis);
    if (config.record_trace)
        result.trace.push_back(table.dump());
    result.log = oracle.log();
    return result;
}

LearnResult run_dual_id(CachedMembership& oracle, const std::vector<Word>& given_suffixes,
                        const LearnerConfig& config) {
    LearnResult result;
    ObservationTable table(oracle.alphabet(), {}, given_suffixes);
    table.fill(oracle);
    while (auto t = table.closed_defect()) {
        std::uint64_t before = oracle.log().wire();
        table.add_prefix(*t);
        {
            PhaseScope phase(oracle, "fix");
            table.fill(oracle);
        }
        result.events.push_back({"closedness-fix", *t, 0, oracle.log().wire() - before, 0});
        note(result, config,
             "closedness defect '" + format_word(table.alphabet(), *t) + "' added to S");
    }
    // Closedness fixing only ever adds rows that are pairwise distinct, so
    // consistency over S alone is vacuous. Checking it one level deeper, on
    // S u S.A, is what catches states the suffix set fails to separate.
    {
        std::vector<Word> deep = table.prefixes();
        for (const Word& s : table.prefixes())
            for (Symbol a = 0; a < table.alphabet().size(); ++a)
                deep.push_back(s.append(a));
        ObservationTable probe(table.alphabet(), deep, given_suffixes);
        probe.fill(oracle);
        if (auto e = probe.consistency_defect())
            throw InputError(
                "the given suffixes do not separate every state pair: witness suffix '" +
                format_word(table.alphabet(), *e) + "'");
    }
    result.hypothesis = table.hypothesis();
    record_hypothesis(result, config, result.hypothesis);
    if (config.record_trace)
        result.trace.push_back(table.dump());
    result.log = oracle.log();
    return result;
}

LearnResult run_az(CachedMembership& oracle, std::uint32_t bound, const LearnerConfig& config) {
    if (bound == 0)
        throw InputError("the state-count bound must be positive");
    LearnResult result;
    std::vector<Word> words = words_up_to(oracle.alphabet(), bound - 1);
    ObservationTable table(oracle.alphabet(), words, words);
    table.fill(oracle);
    if (auto t = table.closed_defect())
        throw InvariantError("closedness defect at '" + format_word(table.alphabet(), *t) +
                             "' despite the bound; the bound was too small");
    if (auto e = table.consistency_defect())
        throw InvariantError("consistency defect with suffix '" +
                             format_word(table.alphabet(), *e) +
                             "' despite the bound; the bound was too small");
    result.hypothesis = table.hypothesis();
    record_hypothesis(result, config, result.hypothesis);
    if (config.record_trace)
        result.trace.push_back(table.dump());
    result.log = oracle.log();
    return result;
}

LearnResult run_lstar(CachedMembership& oracle, EquivalenceOracle& equivalence,
                      const LearnerConfig& config) {
    LearnResult result;
    ObservationTable table(oracle.alphabet());
    std::size_t previous_rows = 0;
    bool processed_counterexample = false;
    for (;;) {
        fix_table(table, oracle, result, config);
        std::size_t rows = table.distinct_row_count();
        if (processed_counterexample && rows <= previous_rows)
            throw InvariantError("processing a counterexample did not increase the row count");
        previous_rows = rows;
        Hypothesis h = table.hypothesis();
        record_hypothesis(result, config, h);
        if (config.record_trace)
            result.trace.push_back(table.dump());
        auto z = ask_equivalence(oracle, equivalence, result, config, h.dfa);
        if (!z) {
            result.hypothesis = std::move(h);
            result.log = oracle.log();
            return result;
        }
        for (const Word& p : prefixes(*z))
            table.add_prefix(p);  // duplicates ignored
        processed_counterexample = true;
    }
}

LearnResult run_kv(CachedMembership& oracle, EquivalenceOracle& equivalence,
                   const LearnerConfig& config) {
    LearnResult result;
    ClassificationTree tree(oracle.alphabet());
    std::size_t previous_states = 0;
    bool processed_counterexample = false;
    for (;;) {
        // Fix loop. A fix's knock-on queries surface during the next defect
        // scan, so an event's cost is closed out one iteration later.
        bool pending = false;
        std::size_t pending_event = 0;
        std::uint64_t fix_start_wire = 0;
        for (;;) {
            auto defect = tree.find_defect(oracle);
            if (pending) {
                result.events[pending_event].wire_cost = oracle.log().wire() - fix_start_wire;
                pending = false;
            }
            if (!defect)
                break;
            fix_start_wire = oracle.log().wire();
            if (defect->kind == ClassificationTree::Defect::Kind::closedness) {
                tree.add_word(defect->word, oracle);
                result.events.push_back({"closedness-fix", defect->word, 0, 0, 0});
                note(result, config, "closedness defect '" +
                                         format_word(tree.alphabet(), defect->word) +
                                         "' added to S");
            } else {
                std::uint64_t budget = column_budget(tree.alphabet(), tree.words());
                int leaf = tree.leaf_of(defect->s1);
                {
                    PhaseScope phase(oracle, "fix");
                    tree.split(leaf, defect->discriminator, oracle);
                }
                result.events.push_back(
                    {"consistency-fix", defect->discriminator, 0, 0, budget});
                note(result, config,
                     "consistency defect: split on '" +
                         format_word(tree.alphabet(), defect->discriminator) + "'");
            }
            pending_event = result.events.size() - 1;
            pending = true;
        }
        Hypothesis h = tree.hypothesis(oracle);
        if (processed_counterexample && h.dfa.num_states <= previous_states)
            throw InvariantError("processing a counterexample did not increase the state count");
        previous_states = h.dfa.num_states;
        record_hypothesis(result, config, h);
        if (config.record_trace)
            result.trace.push_back(tree.dump());
        auto z = ask_equivalence(oracle, equivalence, result, config, h.dfa);
        if (!z) {
            result.hypothesis = std::move(h);
            result.log = oracle.log();
            return result;
        }
        for (const Word& p : prefixes(*z))
            tree.add_word(p, oracle);
        processed_counterexample = true;
    }
}

}  // namespace calf
