#include "calf/wfa_learners.hpp"

namespace calf {

WfaLearnResult run_wfa_id(CachedWeight& oracle, const std::vector<Word>& given_prefixes,
                          const WfaLearnerConfig&) {
    if (given_prefixes.empty())
        throw InputError("the given prefix set must not be empty");
    WfaLearnResult result;
    WfaTable table(oracle.alphabet(), given_prefixes, {});
    table.fill(oracle);
    while (auto e = table.consistency_defect()) {
        table.add_suffix(*e);
        PhaseScope phase(oracle, "fix");
        table.fill(oracle);
    }
    if (auto d = table.closed_defect())
        throw InputError("the given prefixes do not span the reachable space: row of '" +
                         format_word(table.alphabet(), d->first.append(d->second)) +
                         "' escapes it");
    result.rank_trace.push_back(table.rank_top());
    result.hypothesis = table.hypothesis();
    result.log = oracle.log();
    return result;
}

WfaLearnResult run_wfa_lstar(CachedWeight& oracle, WfaEquivalenceOracle& equivalence,
                             const WfaLearnerConfig& config) {
    WfaLearnResult result;
    WfaTable table(oracle.alphabet());
    std::size_t previous_rank = 0;
    bool processed_counterexample = false;
    for (;;) {
        table.fix(oracle);
        std::size_t rank = table.rank_top();
        result.rank_trace.push_back(rank);
        if (processed_counterexample && rank <= previous_rank)
            throw InvariantError("processing a counterexample did not increase the rank");
        previous_rank = rank;
        Wfa h = table.hypothesis();
        if (result.rounds >= config.max_equivalence_rounds)
            throw InvariantError("equivalence round cap exceeded; the equivalence oracle looks "
                                 "faulty");
        ++result.rounds;
        oracle.log().equivalence_rounds = result.rounds;
        auto z = equivalence.counterexample(h);
        if (!z) {
            result.hypothesis = std::move(h);
            result.log = oracle.log();
            return result;
        }
        if (oracle.query(z->word) == eval(h, z->word))
            throw InvariantError("counterexample '" + format_word(oracle.alphabet(), z->word) +
                                 "' does not distinguish hypothesis from target");
        for (const Word& p : prefixes(z->word))
            table.add_prefix(p);
        processed_counterexample = true;
    }
}

}  // namespace calf
