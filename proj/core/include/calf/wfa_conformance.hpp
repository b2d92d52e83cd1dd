// wfa_conformance.hpp -- the W-method carried over to weighted automata.
//
// Agreement of the rational values on the suite certifies equivalence
// against any black box of dimension at most n.

#pragma once

#include "calf/conformance.hpp"
#include "calf/wfa.hpp"
#include "calf/wfa_learners.hpp"

namespace calf {

struct WfaVerdict {
    bool pass = false;
    std::optional<WfaMismatch> mismatch;
    std::uint64_t queries = 0;
};

// S, E from the minimization byproducts (eps-seeded when degenerate);
// S' = S . A^{<= n - dim}; suite = S'.E u E u S'.A.E u S'.
TestSuite wfa_w_method(const Wfa& u, std::uint32_t n);

WfaVerdict run_wfa_suite(const TestSuite& suite, const Wfa& known, WeightOracle& black);

class WfaTestingEquivalence final : public WfaEquivalenceOracle {
public:
    WfaTestingEquivalence(std::uint32_t bound, CachedWeight& black)
        : bound_(bound), black_(&black) {}
    std::optional<WfaMismatch> counterexample(const Wfa& hypothesis) override;

private:
    std::uint32_t bound_;
    CachedWeight* black_;
};

}  // namespace calf
