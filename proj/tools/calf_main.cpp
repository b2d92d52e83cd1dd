// calf -- command-line front end: learn, minimize, equiv, gentests, serve,
// random. Exit codes: 0 pass/none, 1 counterexample found, 2 error.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "calf/conformance.hpp"
#include "calf/dfa_io.hpp"
#include "calf/learners.hpp"
#include "calf/minimization.hpp"
#include "calf/remote.hpp"
#include "calf/report.hpp"
#include "calf/wfa_conformance.hpp"
#include "calf/wfa_io.hpp"
#include "calf/wfa_learners.hpp"

namespace {

using namespace calf;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void spill(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    out << content;
}

bool looks_like_wfa(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream probe(line);
        std::string tok;
        if (probe >> tok)
            return tok == "wfa";
    }
    return false;
}

std::vector<Word> load_words(const std::string& path, const Alphabet& alphabet) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    std::vector<Word> words;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream probe(line);
        std::string tok;
        if (!(probe >> tok))
            continue;
        words.push_back(parse_word(alphabet, line));
    }
    return words;
}

std::string words_to_text(const std::vector<Word>& words, const Alphabet& alphabet) {
    std::ostringstream out;
    for (const Word& w : words)
        out << format_word(alphabet, w) << '\n';
    return out.str();
}

Alphabet parse_alphabet_spec(const std::string& spec) {
    std::istringstream in(spec);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t)
        toks.push_back(t);
    return Alphabet(toks);
}

struct TargetSpec {
    enum class Kind { file, exec, tcp } kind = Kind::file;
    std::string path_or_command;
    std::string host;
    int port = 0;

    static TargetSpec parse(const std::string& text) {
        TargetSpec t;
        if (text.rfind("file:", 0) == 0) {
            t.kind = Kind::file;
            t.path_or_command = text.substr(5);
        } else if (text.rfind("exec:", 0) == 0) {
            t.kind = Kind::exec;
            t.path_or_command = text.substr(5);
        } else if (text.rfind("tcp:", 0) == 0) {
            std::string rest = text.substr(4);
            auto colon = rest.rfind(':');
            if (colon == std::string::npos)
                throw InputError("tcp target needs HOST:PORT");
            t.kind = Kind::tcp;
            t.host = rest.substr(0, colon);
            t.port = std::stoi(rest.substr(colon + 1));
        } else {
            throw InputError("target must start with file:, exec: or tcp:");
        }
        return t;
    }
};

std::unique_ptr<RemoteSession> open_session(const TargetSpec& spec,
                                            std::chrono::milliseconds timeout) {
    if (spec.kind == TargetSpec::Kind::exec)
        return RemoteSession::spawn(spec.path_or_command, timeout);
    return RemoteSession::connect(spec.host, spec.port, timeout);
}

// Report goes to stdout unless the artifact itself is on stdout.
void emit_report(const RunReport& report, bool stats_json, bool artifact_on_stdout) {
    std::ostream& out = artifact_on_stdout ? std::cerr : std::cout;
    if (stats_json)
        out << report.to_json().dump() << '\n';
    else
        out << report.render_text();
}

struct LearnOptions {
    std::string algo;
    std::string mode = "dfa";
    std::string target;
    std::uint32_t bound = 0;
    bool bound_set = false;
    std::string given_words_path;
    std::string out_path;
    bool trace = false;
    std::string stats;
    std::uint64_t max_rounds = 1000;
    std::string alphabet_spec;
    std::uint64_t timeout_ms = 10000;
};

int cmd_learn(const LearnOptions& opt) {
    auto started = std::chrono::steady_clock::now();
    Algorithm algo = parse_algorithm(opt.algo);
    TargetSpec target = TargetSpec::parse(opt.target);
    bool remote = target.kind != TargetSpec::Kind::file;

    if (algo == Algorithm::az && !opt.bound_set)
        throw InputError("--algo az needs --bound");
    if ((algo == Algorithm::id || algo == Algorithm::dual_id) && opt.given_words_path.empty())
        throw InputError("--algo " + opt.algo + " needs --given-words");
    if (remote && (algo == Algorithm::lstar || algo == Algorithm::kv) && !opt.bound_set)
        throw InputError("learning a black box with equivalence queries needs --bound");

    LearnerConfig config;
    config.max_equivalence_rounds = opt.max_rounds;
    config.record_trace = opt.trace;

    RunReport report;
    report.command = "learn";
    report.algorithm = opt.algo;
    report.mode = opt.mode;
    report.out_path = opt.out_path;

    std::string artifact;
    if (opt.mode == "dfa") {
        std::unique_ptr<RemoteSession> session;
        std::unique_ptr<MembershipOracle> base;
        std::optional<Dfa> white_box;
        if (remote) {
            session = open_session(target, std::chrono::milliseconds(opt.timeout_ms));
            if (!opt.alphabet_spec.empty())
                verify_alphabet(*session, parse_alphabet_spec(opt.alphabet_spec));
            base = std::make_unique<RemoteMembership>(*session);
        } else {
            white_box = parse_dfa(slurp(target.path_or_command));
            base = std::make_unique<DfaOracle>(*white_box);
        }
        CachedMembership oracle(*base);
        std::unique_ptr<EquivalenceOracle> equivalence;
        if (algo == Algorithm::lstar || algo == Algorithm::kv) {
            if (white_box && !opt.bound_set)
                equivalence = std::make_unique<WhiteBoxEquivalence>(*white_box);
            else
                equivalence = std::make_unique<TestingEquivalence>(opt.bound, oracle);
        }

        LearnResult result;
        switch (algo) {
            case Algorithm::lstar:
                result = run_lstar(oracle, *equivalence, config);
                break;
            case Algorithm::kv:
                result = run_kv(oracle, *equivalence, config);
                break;
            case Algorithm::az:
                result = run_az(oracle, opt.bound, config);
                break;
            case Algorithm::id:
                result =
                    run_id(oracle, load_words(opt.given_words_path, oracle.alphabet()), config);
                break;
            case Algorithm::dual_id:
                result = run_dual_id(oracle, load_words(opt.given_words_path, oracle.alphabet()),
                                     config);
                break;
        }
        if (opt.trace)
            for (const std::string& line : result.trace)
                std::cerr << line << (line.ends_with('\n') ? "" : "\n");
        artifact = serialize(result.hypothesis.dfa);
        report.rounds = result.rounds;
        report.absorb(result.log);
        if (session)
            session->bye();
    } else if (opt.mode == "wfa") {
        if (algo != Algorithm::lstar && algo != Algorithm::id)
            throw InputError("--mode wfa supports --algo lstar and id");
        std::unique_ptr<RemoteSession> session;
        std::unique_ptr<WeightOracle> base;
        std::optional<Wfa> white_box;
        if (remote) {
            session = open_session(target, std::chrono::milliseconds(opt.timeout_ms));
            if (!opt.alphabet_spec.empty())
                verify_alphabet(*session, parse_alphabet_spec(opt.alphabet_spec));
            base = std::make_unique<RemoteWeight>(*session);
        } else {
            white_box = parse_wfa(slurp(target.path_or_command));
            base = std::make_unique<WfaOracle>(*white_box);
        }
        CachedWeight oracle(*base);
        WfaLearnerConfig config_w;
        config_w.max_equivalence_rounds = opt.max_rounds;

        WfaLearnResult result;
        if (algo == Algorithm::id) {
            result =
                run_wfa_id(oracle, load_words(opt.given_words_path, oracle.alphabet()), config_w);
        } else {
            std::unique_ptr<WfaEquivalenceOracle> equivalence;
            if (white_box && !opt.bound_set)
                equivalence = std::make_unique<WhiteBoxWfaEquivalence>(*white_box);
            else if (opt.bound_set)
                equivalence = std::make_unique<WfaTestingEquivalence>(opt.bound, oracle);
            else
                throw InputError("learning a black box with equivalence queries needs --bound");
            result = run_wfa_lstar(oracle, *equivalence, config_w);
        }
        artifact = serialize(result.hypothesis);
        report.rounds = result.rounds;
        report.absorb(result.log);
        if (session)
            session->bye();
    } else {
        throw InputError("--mode must be dfa or wfa");
    }

    bool to_stdout = opt.out_path.empty();
    if (to_stdout)
        std::cout << artifact;
    else
        spill(opt.out_path, artifact);
    report.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
    emit_report(report, opt.stats == "json", to_stdout);
    return 0;
}

struct MinimizeOptions {
    std::string in_path, out_path, emit_sets_dir, mode;
};

int cmd_minimize(const MinimizeOptions& opt) {
    std::string text = slurp(opt.in_path);
    bool wfa_mode = opt.mode.empty() ? looks_like_wfa(text) : opt.mode == "wfa";
    std::string artifact;
    std::vector<Word> access, separators;
    Alphabet alphabet;
    if (wfa_mode) {
        Wfa machine = parse_wfa(text);
        WfaReduction reduced = minimize_with_words(machine);
        artifact = serialize(reduced.machine);
        access = reduced.access_words;
        separators = reduced.separators;
        alphabet = machine.alphabet;
    } else {
        Dfa machine = parse_dfa(text);
        Dfa minimal = minimize(machine);
        artifact = serialize(minimal);
        access = reachable_part(minimal).second.words;
        separators = moore_merge(minimal).second.words;
        alphabet = machine.alphabet;
    }
    bool to_stdout = opt.out_path.empty();
    if (to_stdout)
        std::cout << artifact;
    else
        spill(opt.out_path, artifact);
    if (!opt.emit_sets_dir.empty()) {
        std::filesystem::create_directories(opt.emit_sets_dir);
        spill(opt.emit_sets_dir + "/S.txt", words_to_text(access, alphabet));
        spill(opt.emit_sets_dir + "/E.txt", words_to_text(separators, alphabet));
    }
    return 0;
}

struct EquivOptions {
    std::string known_path, black, suite_path, method = "w", stats;
    std::uint32_t bound = 0;
    bool bound_set = false;
    std::uint64_t timeout_ms = 10000;
};

int cmd_equiv(const EquivOptions& opt) {
    auto started = std::chrono::steady_clock::now();
    std::string text = slurp(opt.known_path);
    TargetSpec black = TargetSpec::parse(opt.black);
    if (black.kind == TargetSpec::Kind::file)
        throw InputError("--black must be exec: or tcp:");
    if (opt.suite_path.empty() && !opt.bound_set)
        throw InputError("either --suite or --bound is needed");
    auto session = open_session(black, std::chrono::milliseconds(opt.timeout_ms));

    RunReport report;
    report.command = "equiv";

    int exit_code = 0;
    if (looks_like_wfa(text)) {
        Wfa known = parse_wfa(text);
        verify_alphabet(*session, known.alphabet);
        RemoteWeight base(*session);
        CachedWeight oracle(base);
        TestSuite suite;
        if (!opt.suite_path.empty()) {
            suite.words = load_words(opt.suite_path, known.alphabet);
            suite.method = "file";
        } else {
            suite = wfa_w_method(known, opt.bound);
        }
        WfaVerdict verdict = run_wfa_suite(suite, known, oracle);
        report.mode = "wfa";
        report.absorb(oracle.log());
        if (!verdict.pass) {
            std::cout << "counterexample: " << format_word(known.alphabet, verdict.mismatch->word)
                      << " expected " << format_rational(verdict.mismatch->lhs) << " got "
                      << format_rational(verdict.mismatch->rhs) << '\n';
            exit_code = 1;
        } else {
            std::cout << "pass (" << verdict.queries << " words)\n";
        }
    } else {
        Dfa known = parse_dfa(text);
        verify_alphabet(*session, known.alphabet);
        RemoteMembership base(*session);
        CachedMembership oracle(base);
        TestSuite suite;
        if (!opt.suite_path.empty()) {
            suite.words = load_words(opt.suite_path, known.alphabet);
            suite.method = "file";
        } else if (opt.method == "hsi") {
            suite = hsi_suite(known, opt.bound);
        } else {
            suite = w_method_suite(known, opt.bound);
        }
        Verdict verdict = run_suite(suite, known, oracle);
        report.mode = "dfa";
        report.absorb(oracle.log());
        if (!verdict.pass) {
            std::cout << "counterexample: "
                      << format_word(known.alphabet, *verdict.counterexample) << '\n';
            exit_code = 1;
        } else {
            std::cout << "pass (" << verdict.queries << " words)\n";
        }
    }
    session->bye();
    report.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
    if (opt.stats == "json")
        std::cerr << report.to_json().dump() << '\n';
    return exit_code;
}

struct GentestsOptions {
    std::string in_path, out_path, method = "w";
    std::uint32_t bound = 0;
};

int cmd_gentests(const GentestsOptions& opt) {
    std::string text = slurp(opt.in_path);
    std::vector<Word> words;
    Alphabet alphabet;
    if (looks_like_wfa(text)) {
        if (opt.method != "w")
            throw InputError("weighted machines support --method w only");
        Wfa machine = parse_wfa(text);
        words = wfa_w_method(machine, opt.bound).words;
        alphabet = machine.alphabet;
    } else {
        Dfa machine = parse_dfa(text);
        TestSuite suite = opt.method == "hsi" ? hsi_suite(machine, opt.bound)
                                              : w_method_suite(machine, opt.bound);
        words = suite.words;
        alphabet = machine.alphabet;
    }
    std::string artifact = words_to_text(words, alphabet);
    if (opt.out_path.empty())
        std::cout << artifact;
    else
        spill(opt.out_path, artifact);
    return 0;
}

struct ServeOptions {
    std::string in_path;
    int tcp_port = -1;
};

int cmd_serve(const ServeOptions& opt) {
    std::string text = slurp(opt.in_path);
    if (looks_like_wfa(text)) {
        Wfa machine = parse_wfa(text);
        if (opt.tcp_port >= 0)
            serve_tcp_once(machine, opt.tcp_port);
        else
            serve(machine, std::cin, std::cout);
    } else {
        Dfa machine = parse_dfa(text);
        if (opt.tcp_port >= 0)
            serve_tcp_once(machine, opt.tcp_port);
        else
            serve(machine, std::cin, std::cout);
    }
    return 0;
}

struct RandomOptions {
    std::string mode = "dfa", alphabet_spec = "a b", out_path;
    std::uint64_t seed = 0;
    std::uint32_t states = 4;
    std::uint32_t dim = 2;
    int lo = -1, hi = 1;
};

int cmd_random(const RandomOptions& opt) {
    Alphabet alphabet = parse_alphabet_spec(opt.alphabet_spec);
    std::string artifact;
    if (opt.mode == "wfa")
        artifact = serialize(random_wfa(opt.seed, opt.dim, alphabet, opt.lo, opt.hi));
    else
        artifact = serialize(random_dfa(opt.seed, opt.states, alphabet));
    if (opt.out_path.empty())
        std::cout << artifact;
    else
        spill(opt.out_path, artifact);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"calf: learn, minimize and test automata against black-box oracles"};
    app.require_subcommand(1);

    LearnOptions learn_opt;
    auto* learn = app.add_subcommand("learn", "learn an automaton from an oracle");
    learn->add_option("--algo", learn_opt.algo, "lstar|kv|id|az|dual-id")->required();
    learn->add_option("--mode", learn_opt.mode, "dfa|wfa");
    learn->add_option("--target", learn_opt.target, "file:PATH | exec:CMD | tcp:HOST:PORT")
        ->required();
    learn->add_option("--bound", learn_opt.bound, "state/dimension bound")
        ->each([&learn_opt](const std::string&) { learn_opt.bound_set = true; });
    learn->add_option("--given-words", learn_opt.given_words_path, "word list for id/dual-id");
    learn->add_option("--out", learn_opt.out_path, "write the learned automaton here");
    learn->add_flag("--trace", learn_opt.trace, "print defect/counterexample log");
    learn->add_option("--stats", learn_opt.stats, "json for machine-readable stats");
    learn->add_option("--max-rounds", learn_opt.max_rounds, "equivalence round safety cap");
    learn->add_option("--alphabet", learn_opt.alphabet_spec,
                      "expected alphabet for remote oracles, e.g. \"a b\"");
    learn->add_option("--timeout", learn_opt.timeout_ms, "per-query timeout in ms");

    MinimizeOptions min_opt;
    auto* min = app.add_subcommand("minimize", "minimize an automaton file");
    min->add_option("--in", min_opt.in_path)->required();
    min->add_option("--out", min_opt.out_path);
    min->add_option("--emit-sets", min_opt.emit_sets_dir,
                    "directory for the S.txt/E.txt word lists");
    min->add_option("--mode", min_opt.mode, "dfa|wfa (default: sniff the file)");

    EquivOptions eq_opt;
    auto* eq = app.add_subcommand("equiv", "test a known automaton against a black box");
    eq->add_option("--known", eq_opt.known_path)->required();
    eq->add_option("--black", eq_opt.black, "exec:CMD | tcp:HOST:PORT")->required();
    eq->add_option("--bound", eq_opt.bound, "trusted size bound of the black box")
        ->each([&eq_opt](const std::string&) { eq_opt.bound_set = true; });
    eq->add_option("--suite", eq_opt.suite_path, "run this suite file instead of generating");
    eq->add_option("--method", eq_opt.method, "w|hsi");
    eq->add_option("--stats", eq_opt.stats, "json for machine-readable stats");
    eq->add_option("--timeout", eq_opt.timeout_ms, "per-query timeout in ms");

    GentestsOptions gen_opt;
    auto* gen = app.add_subcommand("gentests", "generate a conformance test suite");
    gen->add_option("--in", gen_opt.in_path)->required();
    gen->add_option("--bound", gen_opt.bound)->required();
    gen->add_option("--method", gen_opt.method, "w|hsi");
    gen->add_option("--out", gen_opt.out_path);

    ServeOptions serve_opt;
    auto* srv = app.add_subcommand("serve", "answer oracle queries for an automaton file");
    srv->add_option("--in", serve_opt.in_path)->required();
    srv->add_option("--tcp", serve_opt.tcp_port, "listen on this port for one session");

    RandomOptions rnd_opt;
    auto* rnd = app.add_subcommand("random", "generate a random automaton");
    rnd->add_option("--mode", rnd_opt.mode, "dfa|wfa");
    rnd->add_option("--seed", rnd_opt.seed);
    rnd->add_option("--states", rnd_opt.states, "state count (dfa)");
    rnd->add_option("--dim", rnd_opt.dim, "dimension (wfa)");
    rnd->add_option("--alphabet", rnd_opt.alphabet_spec, "e.g. \"a b\"");
    rnd->add_option("--lo", rnd_opt.lo, "least entry (wfa)");
    rnd->add_option("--hi", rnd_opt.hi, "greatest entry (wfa)");
    rnd->add_option("--out", rnd_opt.out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*learn)
            return cmd_learn(learn_opt);
        if (*min)
            return cmd_minimize(min_opt);
        if (*eq)
            return cmd_equiv(eq_opt);
        if (*gen)
            return cmd_gentests(gen_opt);
        if (*srv)
            return cmd_serve(serve_opt);
        if (*rnd)
            return cmd_random(rnd_opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
