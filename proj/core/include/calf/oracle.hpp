// oracle.hpp -- membership oracles, caching, and query accounting.
//
// Learners and testers never talk to a target directly; they go through a
// caching wrapper that answers repeats from its cache and keeps the books.
// Within one wrapper all answers for a word are identical, and the number
// of queries that actually reached the backing oracle is always
// membership - cache_hits.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "calf/dfa.hpp"
#include "calf/rational.hpp"
#include "calf/wfa.hpp"
#include "calf/word.hpp"

namespace calf {

struct QueryLog {
    std::uint64_t membership = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t equivalence_rounds = 0;
    std::map<std::string, std::uint64_t> per_phase;  // fill / fix / test
    bool record_transcript = false;
    std::vector<std::pair<Word, std::string>> transcript;

    std::uint64_t wire() const { return membership - cache_hits; }
};

class MembershipOracle {
public:
    virtual ~MembershipOracle() = default;
    virtual bool query(const Word& w) = 0;
    virtual const Alphabet& alphabet() const = 0;
};

class WeightOracle {
public:
    virtual ~WeightOracle() = default;
    virtual Rational query(const Word& w) = 0;
    virtual const Alphabet& alphabet() const = 0;
};

namespace detail {

template <typename Base, typename Value, typename Format>
class Caching final : public Base {
public:
    explicit Caching(Base& inner) : inner_(&inner) {}

    Value query(const Word& w) override {
        ++log_.membership;
        if (!phase_.empty())
            ++log_.per_phase[phase_];
        auto it = cache_.find(w);
        if (it != cache_.end()) {
            ++log_.cache_hits;
            return it->second;
        }
        Value v = inner_->query(w);
        if (log_.record_transcript)
            log_.transcript.emplace_back(w, Format{}(v));
        cache_.emplace(w, v);
        return v;
    }

    const Alphabet& alphabet() const override { return inner_->alphabet(); }

    QueryLog& log() { return log_; }
    const QueryLog& log() const { return log_; }
    void set_phase(std::string phase) { phase_ = std::move(phase); }
    const std::string& phase() const { return phase_; }
    bool cached(const Word& w) const { return cache_.count(w) != 0; }

private:
    Base* inner_;
    std::map<Word, Value> cache_;
    QueryLog log_;
    std::string phase_;
};

struct FormatBit {
    std::string operator()(bool b) const { return b ? "1" : "0"; }
};
struct FormatWeight {
    std::string operator()(const Rational& r) const { return format_rational(r); }
};

}  // namespace detail

using CachedMembership = detail::Caching<MembershipOracle, bool, detail::FormatBit>;
using CachedWeight = detail::Caching<WeightOracle, Rational, detail::FormatWeight>;

// Restores the previous accounting phase on scope exit.
template <typename Cached>
class PhaseScope {
public:
    PhaseScope(Cached& oracle, std::string phase) : oracle_(oracle), prev_(oracle.phase()) {
        oracle_.set_phase(std::move(phase));
    }
    ~PhaseScope() { oracle_.set_phase(prev_); }
    PhaseScope(const PhaseScope&) = delete;
    PhaseScope& operator=(const PhaseScope&) = delete;

private:
    Cached& oracle_;
    std::string prev_;
};

// White-box membership oracle simulated on a DFA.
class DfaOracle final : public MembershipOracle {
public:
    explicit DfaOracle(Dfa d) : dfa_(std::move(d)) { dfa_.validate(); }
    bool query(const Word& w) override { return eval(dfa_, w); }
    const Alphabet& alphabet() const override { return dfa_.alphabet; }
    const Dfa& dfa() const { return dfa_; }

private:
    Dfa dfa_;
};

// White-box weight oracle simulated on a WFA.
class WfaOracle final : public WeightOracle {
public:
    explicit WfaOracle(Wfa w) : wfa_(std::move(w)) { wfa_.validate(); }
    Rational query(const Word& w) override { return eval(wfa_, w); }
    const Alphabet& alphabet() const override { return wfa_.alphabet; }
    const Wfa& wfa() const { return wfa_; }

private:
    Wfa wfa_;
};

class EquivalenceOracle {
public:
    virtual ~EquivalenceOracle() = default;
    // None when the hypothesis matches the target language.
    virtual std::optional<Word> counterexample(const Dfa& hypothesis) = 0;
};

// White-box equivalence via the exact product construction.
class WhiteBoxEquivalence final : public EquivalenceOracle {
public:
    explicit WhiteBoxEquivalence(Dfa target) : target_(std::move(target)) { target_.validate(); }
    std::optional<Word> counterexample(const Dfa& hypothesis) override {
        return find_counterexample(hypothesis, target_);
    }

private:
    Dfa target_;
};

}  // namespace calf
