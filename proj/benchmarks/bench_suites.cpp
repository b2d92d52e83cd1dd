#include <benchmark/benchmark.h>

#include "calf/conformance.hpp"
#include "calf/wfa_conformance.hpp"
#include "calf/wfa_learners.hpp"

using namespace calf;

namespace {

Alphabet ab() {
    return Alphabet({"a", "b"});
}

void BM_WMethodSuite(benchmark::State& state) {
    Dfa u = minimize(random_dfa(3, static_cast<std::uint32_t>(state.range(0)), ab()));
    std::size_t words = 0;
    for (auto _ : state) {
        TestSuite suite = w_method_suite(u, u.num_states + 2);
        benchmark::DoNotOptimize(suite.words.data());
        words = suite.words.size();
    }
    state.counters["suite_words"] = static_cast<double>(words);
}

void BM_HsiSuite(benchmark::State& state) {
    Dfa u = minimize(random_dfa(3, static_cast<std::uint32_t>(state.range(0)), ab()));
    std::size_t words = 0;
    for (auto _ : state) {
        TestSuite suite = hsi_suite(u, u.num_states + 2);
        benchmark::DoNotOptimize(suite.words.data());
        words = suite.words.size();
    }
    state.counters["suite_words"] = static_cast<double>(words);
}

void BM_WfaMinimize(benchmark::State& state) {
    Wfa w = random_wfa(5, static_cast<std::uint32_t>(state.range(0)), ab(), -2, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(minimize(w).dim);
}

void BM_WfaLstar(benchmark::State& state) {
    Wfa target = random_wfa(9, static_cast<std::uint32_t>(state.range(0)), ab(), -1, 1);
    for (auto _ : state) {
        WfaOracle base(target);
        CachedWeight oracle(base);
        WhiteBoxWfaEquivalence equivalence(target);
        benchmark::DoNotOptimize(run_wfa_lstar(oracle, equivalence).hypothesis.dim);
    }
}

}  // namespace

BENCHMARK(BM_WMethodSuite)->Arg(6)->Arg(10);
BENCHMARK(BM_HsiSuite)->Arg(6)->Arg(10);
BENCHMARK(BM_WfaMinimize)->Arg(3)->Arg(6);
BENCHMARK(BM_WfaLstar)->Arg(2)->Arg(4);

BENCHMARK_MAIN();
