// report.hpp -- run summaries for the command-line tools.
//
// The structured form is a flat JSON document (one "phases" map at most)
// that round-trips through its own parser, so runs can be diffed and
// collected by scripts.

#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>

#include "calf/oracle.hpp"

namespace calf {

struct RunReport {
    std::string command;
    std::string algorithm;  // learn only
    std::string mode;       // dfa | wfa
    std::string out_path;   // empty when the artifact went to stdout
    std::uint64_t rounds = 0;
    double wall_ms = 0.0;
    std::uint64_t membership = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t equivalence_rounds = 0;
    std::map<std::string, std::uint64_t> phases;

    std::uint64_t wire() const { return membership - cache_hits; }
    void absorb(const QueryLog& log);

    std::string render_text() const;
    nlohmann::json to_json() const;
    static RunReport from_json(const nlohmann::json& j);

    bool operator==(const RunReport&) const = default;
};

}  // namespace calf
