// wfa_learners.hpp -- learning weighted automata from weight queries.
//
// Mirrors the DFA learners with rank in place of the distinct-row count:
// run_wfa_id assumes the given prefixes span the reachable space and fixes
// consistency only; run_wfa_lstar grows the table from equivalence
// counterexamples, whose prefixes must increase the top rank.

#pragma once

#include "calf/wfa_table.hpp"

namespace calf {

class WfaEquivalenceOracle {
public:
    virtual ~WfaEquivalenceOracle() = default;
    virtual std::optional<WfaMismatch> counterexample(const Wfa& hypothesis) = 0;
};

class WhiteBoxWfaEquivalence final : public WfaEquivalenceOracle {
public:
    explicit WhiteBoxWfaEquivalence(Wfa target) : target_(std::move(target)) {
        target_.validate();
    }
    std::optional<WfaMismatch> counterexample(const Wfa& hypothesis) override {
        return find_counterexample(hypothesis, target_);
    }

private:
    Wfa target_;
};

struct WfaLearnerConfig {
    std::uint64_t max_equivalence_rounds = 1000;
};

struct WfaLearnResult {
    Wfa hypothesis;
    QueryLog log;
    std::uint64_t rounds = 0;
    std::vector<std::size_t> rank_trace;  // top rank after each fix pass
};

WfaLearnResult run_wfa_id(CachedWeight& oracle, const std::vector<Word>& given_prefixes,
                          const WfaLearnerConfig& config = {});
WfaLearnResult run_wfa_lstar(CachedWeight& oracle, WfaEquivalenceOracle& equivalence,
                             const WfaLearnerConfig& config = {});

}  // namespace calf
