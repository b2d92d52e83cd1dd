#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <thread>
#include <fstream>
#include <sstream>

#include "calf/dfa_io.hpp"
#include "calf/report.hpp"
#include "calf/wfa_io.hpp"

#include "support/fixtures.hpp"
#include "support/tmpdir.hpp"

using namespace calf;
using namespace calf::testing;

namespace {

const std::string tool = CALF_TOOL_PATH;

struct RunOutcome {
    int exit_code;
    std::string out;
    std::string err;
};

RunOutcome run(const TempDir& dir, const std::string& args) {
    std::string out_path = (dir.path / "stdout.txt").string();
    std::string err_path = (dir.path / "stderr.txt").string();
    int rc = std::system((tool + " " + args + " >" + out_path + " 2>" + err_path).c_str());
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    };
    return {WEXITSTATUS(rc), slurp(out_path), slurp(err_path)};
}

}  // namespace

TEST_CASE("learn writes the automaton and machine-readable stats") {
    TempDir dir;
    std::string d1 = dir.file("d1.dfa", serialize(make_d1()));
    std::string out = (dir.path / "learned.dfa").string();
    auto r = run(dir, "learn --algo lstar --mode dfa --target file:" + d1 +
                          " --bound 2 --out " + out + " --stats json");
    REQUIRE(r.exit_code == 0);

    std::ifstream fin(out);
    std::stringstream text;
    text << fin.rdbuf();
    CHECK(isomorphic(parse_dfa(text.str()), make_d1()));

    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("command") == "learn");
    CHECK(j.at("algorithm") == "lstar");
    CHECK(j.at("mode") == "dfa");
    CHECK(j.at("rounds").is_number_unsigned());
    CHECK(j.at("rounds").get<std::uint64_t>() <= 2);
    CHECK(j.at("equivalence_rounds") == j.at("rounds"));
    CHECK(j.at("membership").is_number_unsigned());
    CHECK(j.at("cache_hits").is_number_unsigned());
    CHECK(j.at("wire").get<std::uint64_t>() ==
          j.at("membership").get<std::uint64_t>() - j.at("cache_hits").get<std::uint64_t>());
    CHECK(j.at("phases").is_object());
    CHECK(j.at("wall_ms").is_number());

    // The stats document round-trips through its own parser.
    RunReport parsed = RunReport::from_json(j);
    CHECK(parsed.to_json() == j);
}

TEST_CASE("learn with the bound-based algorithm asks no equivalence queries") {
    TempDir dir;
    std::string d1 = dir.file("d1.dfa", serialize(make_d1()));
    auto r = run(dir, "learn --algo az --mode dfa --target file:" + d1 +
                          " --bound 2 --out " + (dir.path / "o.dfa").string() + " --stats json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("equivalence_rounds").get<std::uint64_t>() == 0);
}

TEST_CASE("missing flag combinations are usage errors") {
    TempDir dir;
    std::string d1 = dir.file("d1.dfa", serialize(make_d1()));
    CHECK(run(dir, "learn --algo id --mode dfa --target file:" + d1).exit_code == 2);
    CHECK(run(dir, "learn --algo az --mode dfa --target file:" + d1).exit_code == 2);
    CHECK(run(dir, "learn --algo lstar").exit_code == 2);
    CHECK(run(dir, "learn --algo kv --mode wfa --target file:" + d1).exit_code == 2);
    CHECK(run(dir, "nonsense").exit_code == 2);
}

TEST_CASE("learn with given words runs the prefix-driven algorithm") {
    TempDir dir;
    std::string d1 = dir.file("d1.dfa", serialize(make_d1()));
    std::string words = dir.file("words.txt", "eps\na\n");
    std::string out = (dir.path / "o.dfa").string();
    auto r = run(dir, "learn --algo id --mode dfa --target file:" + d1 + " --given-words " +
                          words + " --out " + out);
    REQUIRE(r.exit_code == 0);
    std::ifstream fin(out);
    std::stringstream text;
    text << fin.rdbuf();
    CHECK(isomorphic(parse_dfa(text.str()), make_d1()));

    std::string short_words = dir.file("short.txt", "eps\n");
    CHECK(run(dir, "learn --algo id --mode dfa --target file:" + d1 + " --given-words " +
                       short_words)
              .exit_code == 2);
}

TEST_CASE("minimize writes the quotient and the word sets") {
    TempDir dir;
    std::string d2 = dir.file("d2.dfa", serialize(make_d2()));
    std::string out = (dir.path / "m.dfa").string();
    std::string sets = (dir.path / "sets").string();
    auto r = run(dir, "minimize --in " + d2 + " --out " + out + " --emit-sets " + sets);
    REQUIRE(r.exit_code == 0);

    std::ifstream fin(out);
    std::stringstream text;
    text << fin.rdbuf();
    CHECK(parse_dfa(text.str()).num_states == 2);

    std::ifstream sfile(sets + "/S.txt");
    std::stringstream s_text;
    s_text << sfile.rdbuf();
    CHECK(s_text.str() == "eps\na\n");
    std::ifstream efile(sets + "/E.txt");
    std::stringstream e_text;
    e_text << efile.rdbuf();
    CHECK(e_text.str() == "eps\n");
}

TEST_CASE("gentests writes one word per line in suite order") {
    TempDir dir;
    std::string d1 = dir.file("d1.dfa", serialize(make_d1()));
    std::string out = (dir.path / "suite.txt").string();
    auto r = run(dir, "gentests --in " + d1 + " --bound 2 --method w --out " + out);
    REQUIRE(r.exit_code == 0);
    std::ifstream fin(out);
    std::stringstream text;
    text << fin.rdbuf();
    CHECK(text.str() == "eps\na\nb\na a\na b\n");

    CHECK(run(dir, "gentests --in " + d1 + " --bound 1 --method w").exit_code == 2);
}

TEST_CASE("equiv returns 0 on pass, 1 on counterexample, 2 on errors") {
    TempDir dir;
    std::string d1 = dir.file("d1.dfa", serialize(make_d1()));
    std::string other = dir.file("other.dfa", serialize(make_ends_in_b()));
    std::string oracle = tool + " serve --in " + d1;

    auto pass = run(dir, "equiv --known " + d1 + " --black 'exec:" + oracle + "' --bound 2");
    CHECK(pass.exit_code == 0);
    CHECK(pass.out.find("pass") == 0);

    auto fail = run(dir, "equiv --known " + other + " --black 'exec:" + oracle + "' --bound 2");
    CHECK(fail.exit_code == 1);
    CHECK(fail.out.find("counterexample:") == 0);

    auto err = run(dir, "equiv --known " + d1 + " --black 'exec:" + oracle + "'");
    CHECK(err.exit_code == 2);

    SUBCASE("a suite file can replace generation") {
        std::string suite = dir.file("suite.txt", "eps\na\nb\n");
        auto r = run(dir, "equiv --known " + d1 + " --black 'exec:" + oracle + "' --suite " +
                              suite);
        CHECK(r.exit_code == 0);
    }
}

TEST_CASE("format errors surface as exit code 2 with a line number") {
    TempDir dir;
    std::string bad = dir.file("bad.dfa",
                               "dfa\nalphabet: a\nstates: q0\ninitial: q0\naccepting:\n");
    auto r = run(dir, "minimize --in " + bad);
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("missing transition") != std::string::npos);
}

TEST_CASE("random generation is reproducible and loadable") {
    TempDir dir;
    auto a = run(dir, "random --mode dfa --seed 11 --states 5 --alphabet 'a b'");
    auto b = run(dir, "random --mode dfa --seed 11 --states 5 --alphabet 'a b'");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(parse_dfa(a.out).num_states == 5);

    auto w = run(dir, "random --mode wfa --seed 3 --dim 3 --alphabet 'a b'");
    CHECK(w.exit_code == 0);
    CHECK(parse_wfa(w.out).dim == 3);
}

TEST_CASE("wfa learning through the cli") {
    TempDir dir;
    std::string w1 = dir.file("w1.wfa", serialize(make_w1()));
    std::string out = (dir.path / "l.wfa").string();
    auto r = run(dir, "learn --algo lstar --mode wfa --target file:" + w1 + " --out " + out);
    REQUIRE(r.exit_code == 0);
    std::ifstream fin(out);
    std::stringstream text;
    text << fin.rdbuf();
    Wfa learned = parse_wfa(text.str());
    CHECK(learned.dim == 2);
    CHECK(!find_counterexample(learned, make_w1()).has_value());
}

TEST_CASE("tcp targets work for learning and conformance") {
    TempDir dir;
    std::string d1 = dir.file("d1.dfa", serialize(make_d1()));
    int port = 41000 + static_cast<int>(getpid() % 2000);
    std::string out = (dir.path / "learned.dfa").string();

    // One serve process per single-session command.
    std::string serve_bg = tool + " serve --in " + d1 + " --tcp " + std::to_string(port) + " &";
    REQUIRE(std::system(serve_bg.c_str()) == 0);
    int rc = 2;
    for (int attempt = 0; attempt < 50; ++attempt) {
        auto r = run(dir, "learn --algo lstar --mode dfa --target tcp:127.0.0.1:" +
                              std::to_string(port) + " --bound 2 --out " + out);
        rc = r.exit_code;
        if (rc == 0)
            break;
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
    REQUIRE(rc == 0);
    std::ifstream fin(out);
    std::stringstream text;
    text << fin.rdbuf();
    CHECK(isomorphic(parse_dfa(text.str()), make_d1()));

    REQUIRE(std::system(serve_bg.c_str()) == 0);
    int eq_rc = 2;
    for (int attempt = 0; attempt < 50; ++attempt) {
        auto r = run(dir, "equiv --known " + d1 + " --black tcp:127.0.0.1:" +
                              std::to_string(port) + " --bound 2");
        eq_rc = r.exit_code;
        if (eq_rc == 0)
            break;
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
    CHECK(eq_rc == 0);
}

TEST_CASE("trace output shows the table evolution") {
    TempDir dir;
    std::string d1 = dir.file("d1.dfa", serialize(make_d1()));
    auto r = run(dir, "learn --algo lstar --mode dfa --target file:" + d1 + " --out " +
                          (dir.path / "o.dfa").string() + " --trace");
    REQUIRE(r.exit_code == 0);
    CHECK(r.err.find("T\teps") != std::string::npos);       // table dump header
    CHECK(r.err.find("closedness defect") != std::string::npos);
}
