// learners.hpp -- the DFA learning algorithms.
//
// Four ways to reconstruct a minimal DFA from membership queries:
//   run_id       given access words for every state, fixes consistency only
//   run_dual_id  given separators for every state pair, fixes closedness only
//   run_az       given a state-count bound n, one shot with S = E = A^{<=n-1}
//   run_lstar    equivalence queries, counterexample prefixes extend S
//   run_kv       like run_lstar but on a classification tree
//
// Progress guarantees are enforced at runtime: a counterexample that fails
// to increase the state count raises InvariantError.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "calf/classification_tree.hpp"
#include "calf/observation_table.hpp"

namespace calf {

enum class Algorithm { lstar, kv, id, az, dual_id };

Algorithm parse_algorithm(std::string_view name);
std::string algorithm_name(Algorithm a);

struct LearnerConfig {
    std::uint64_t max_equivalence_rounds = 1000;
    bool record_trace = false;  // keep human-readable table/tree dumps
};

struct TraceEvent {
    std::string kind;  // hypothesis | counterexample | closedness-fix | consistency-fix
    Word word;
    std::uint64_t hypothesis_states = 0;
    std::uint64_t wire_cost = 0;  // wire queries attributable to a fix
    std::uint64_t budget = 0;     // |S u S.A| at the time of a consistency fix
};

struct LearnResult {
    Hypothesis hypothesis;
    QueryLog log;
    std::uint64_t rounds = 0;  // equivalence queries asked
    std::vector<TraceEvent> events;
    std::vector<std::string> trace;
};

LearnResult run_id(CachedMembership& oracle, const std::vector<Word>& given_prefixes,
                   const LearnerConfig& config = {});
LearnResult run_dual_id(CachedMembership& oracle, const std::vector<Word>& given_suffixes,
                        const LearnerConfig& config = {});
LearnResult run_az(CachedMembership& oracle, std::uint32_t bound,
                   const LearnerConfig& config = {});
LearnResult run_lstar(CachedMembership& oracle, EquivalenceOracle& equivalence,
                      const LearnerConfig& config = {});
LearnResult run_kv(CachedMembership& oracle, EquivalenceOracle& equivalence,
                   const LearnerConfig& config = {});

}  // namespace calf
