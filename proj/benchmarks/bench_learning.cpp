#include <benchmark/benchmark.h>

#include "calf/learners.hpp"
#include "calf/minimization.hpp"

using namespace calf;

namespace {

Alphabet ab() {
    return Alphabet({"a", "b"});
}

Dfa target_of_size(std::int64_t n) {
    // Deterministic family: first seed whose minimized size matches n.
    for (std::uint64_t seed = 0;; ++seed) {
        Dfa candidate = minimize(random_dfa(seed, static_cast<std::uint32_t>(n), ab()));
        if (candidate.num_states == n)
            return candidate;
    }
}

void BM_Lstar(benchmark::State& state) {
    Dfa target = target_of_size(state.range(0));
    std::uint64_t wire = 0;
    for (auto _ : state) {
        DfaOracle base(target);
        CachedMembership oracle(base);
        WhiteBoxEquivalence equivalence(target);
        LearnResult result = run_lstar(oracle, equivalence);
        benchmark::DoNotOptimize(result.hypothesis.dfa.num_states);
        wire = result.log.wire();
    }
    state.counters["wire_queries"] = static_cast<double>(wire);
}

void BM_Kv(benchmark::State& state) {
    Dfa target = target_of_size(state.range(0));
    std::uint64_t wire = 0;
    for (auto _ : state) {
        DfaOracle base(target);
        CachedMembership oracle(base);
        WhiteBoxEquivalence equivalence(target);
        LearnResult result = run_kv(oracle, equivalence);
        benchmark::DoNotOptimize(result.hypothesis.dfa.num_states);
        wire = result.log.wire();
    }
    state.counters["wire_queries"] = static_cast<double>(wire);
}

void BM_MooreMerge(benchmark::State& state) {
    Dfa d = random_dfa(7, static_cast<std::uint32_t>(state.range(0)), ab());
    for (auto _ : state)
        benchmark::DoNotOptimize(moore_merge(d).first.num_states);
}

void BM_SplittingTree(benchmark::State& state) {
    Dfa d = random_dfa(7, static_cast<std::uint32_t>(state.range(0)), ab());
    for (auto _ : state)
        benchmark::DoNotOptimize(splitting_tree_minimize(d).first.num_states);
}

void BM_Equivalence(benchmark::State& state) {
    Dfa u = random_dfa(11, static_cast<std::uint32_t>(state.range(0)), ab());
    Dfa v = random_dfa(13, static_cast<std::uint32_t>(state.range(0)), ab());
    for (auto _ : state)
        benchmark::DoNotOptimize(find_counterexample(u, v));
}

}  // namespace

BENCHMARK(BM_Lstar)->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(BM_Kv)->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(BM_MooreMerge)->Arg(16)->Arg(64);
BENCHMARK(BM_SplittingTree)->Arg(16)->Arg(64);
BENCHMARK(BM_Equivalence)->Arg(32)->Arg(256);
