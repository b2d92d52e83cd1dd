#include "calf/report.hpp"

#include <sstream>

namespace calf {

void RunReport::absorb(const QueryLog& log) {
    membership = log.membership;
    cache_hits = log.cache_hits;
    equivalence_rounds = log.equivalence_rounds;
    phases = log.per_phase;
}

std::string RunReport::render_text() const {
    std::ostringstream out;
    out << command;
    if (!algorithm.empty())
        out << " [" << algorithm << "]";
    out << " mode=" << mode << '\n';
    if (!out_path.empty())
        out << "  wrote " << out_path << '\n';
    out << "  membership queries: " << membership << " (" << cache_hits << " cache hits, "
        << wire() << " on the wire)\n";
    out << "  equivalence rounds: " << equivalence_rounds << '\n';
    if (!phases.empty()) {
        out << "  per phase:";
        for (const auto& [phase, count] : phases)
            out << ' ' << phase << '=' << count;
        out << '\n';
    }
    out << "  wall time: " << wall_ms << " ms\n";
    return out.str();
}

nlohmann::json RunReport::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["algorithm"] = algorithm;
    j["mode"] = mode;
    j["out"] = out_path;
    j["rounds"] = rounds;
    j["wall_ms"] = wall_ms;
    j["membership"] = membership;
    j["cache_hits"] = cache_hits;
    j["wire"] = wire();
    j["equivalence_rounds"] = equivalence_rounds;
    j["phases"] = phases;
    return j;
}

RunReport RunReport::from_json(const nlohmann::json& j) {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.algorithm = j.at("algorithm").get<std::string>();
    r.mode = j.at("mode").get<std::string>();
    r.out_path = j.at("out").get<std::string>();
    r.rounds = j.at("rounds").get<std::uint64_t>();
    r.wall_ms = j.at("wall_ms").get<double>();
    r.membership = j.at("membership").get<std::uint64_t>();
    r.cache_hits = j.at("cache_hits").get<std::uint64_t>();
    r.equivalence_rounds = j.at("equivalence_rounds").get<std::uint64_t>();
    r.phases = j.at("phases").get<std::map<std::string, std::uint64_t>>();
    if (r.wire() != j.at("wire").get<std::uint64_t>())
        throw InputError("inconsistent wire count in stats document");
    return r;
}

}  // namespace calf
