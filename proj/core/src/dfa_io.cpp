#include "calf/dfa_io.hpp"

#include <map>
#include <sstream>

namespace calf {

namespace {

struct LineReader {
    std::istringstream in;
    int line_number = 0;

    explicit LineReader(std::string_view text) : in(std::string(text)) {}

    // Next line with comments stripped and surrounding blanks skipped.
    std::optional<std::pair<std::string, int>> next() {
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_number;
            if (auto hash = raw.find('#'); hash != std::string::npos)
                raw.erase(hash);
            std::istringstream probe(raw);
            std::string tok;
            if (probe >> tok)
                return std::make_pair(raw, line_number);
        }
        return std::nullopt;
    }
};

std::vector<std::string> split_tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

// "key: v1 v2" -> tokens after the key; the key token must be "key:".
std::vector<std::string> expect_keyed(LineReader& r, const std::string& key, bool allow_empty) {
    auto line = r.next();
    if (!line)
        throw FormatError("expected '" + key + ":' line", r.line_number);
    auto toks = split_tokens(line->first);
    if (toks.empty() || toks[0] != key + ":")
        throw FormatError("expected '" + key + ":' line", line->second);
    toks.erase(toks.begin());
    if (toks.empty() && !allow_empty)
        throw FormatError("'" + key + ":' line needs at least one entry", line->second);
    return toks;
}

}  // namespace

Dfa parse_dfa(std::string_view text) {
    LineReader reader(text);

    auto header = reader.next();
    if (!header || split_tokens(header->first) != std::vector<std::string>{"dfa"})
        throw FormatError("expected 'dfa' header", header ? header->second : 1);

    int alphabet_line = reader.line_number + 1;
    auto alphabet_tokens = expect_keyed(reader, "alphabet", false);
    Alphabet alphabet;
    try {
        alphabet = Alphabet(alphabet_tokens);
    } catch (const InputError& e) {
        throw FormatError(e.what(), alphabet_line);
    }

    int states_line = reader.line_number + 1;
    auto state_names = expect_keyed(reader, "states", false);
    std::map<std::string, State> state_index;
    for (std::size_t i = 0; i < state_names.size(); ++i)
        if (!state_index.emplace(state_names[i], static_cast<State>(i)).second)
            throw FormatError("duplicate state name '" + state_names[i] + "'", states_line);

    auto lookup_state = [&](const std::string& name, int line) {
        auto it = state_index.find(name);
        if (it == state_index.end())
            throw FormatError("unknown state '" + name + "'", line);
        return it->second;
    };

    Dfa d;
    d.alphabet = alphabet;
    d.num_states = static_cast<std::uint32_t>(state_names.size());

    auto initial_tokens = expect_keyed(reader, "initial", false);
    if (initial_tokens.size() != 1)
        throw FormatError("'initial:' line needs exactly one state", reader.line_number);
    d.initial = lookup_state(initial_tokens[0], reader.line_number);

    auto accepting_tokens = expect_keyed(reader, "accepting", true);
    d.accepting.assign(d.num_states, false);
    for (const std::string& name : accepting_tokens)
        d.accepting[lookup_state(name, reader.line_number)] = true;

    constexpr State missing = static_cast<State>(-1);
    d.delta.assign(static_cast<std::size_t>(d.num_states) * alphabet.size(), missing);

    while (auto line = reader.next()) {
        auto toks = split_tokens(line->first);
        if (toks.size() != 4 || toks[2] != "->")
            throw FormatError("expected transition 'state symbol -> state'", line->second);
        State from = lookup_state(toks[0], line->second);
        auto sym = alphabet.index_of(toks[1]);
        if (!sym)
            throw FormatError("unknown symbol '" + toks[1] + "'", line->second);
        State to = lookup_state(toks[3], line->second);
        if (d.next(from, *sym) != missing)
            throw FormatError("duplicate transition (" + toks[0] + ", " + toks[1] + ")",
                              line->second);
        d.set_next(from, *sym, to);
    }

    for (State q = 0; q < d.num_states; ++q)
        for (Symbol a = 0; a < alphabet.size(); ++a)
            if (d.next(q, a) == missing)
                throw FormatError("missing transition (" + state_names[q] + ", " +
                                      alphabet.token(a) + ")",
                                  reader.line_number);

    d.validate();
    return d;
}

std::string serialize(const Dfa& d) {
    std::ostringstream out;
    out << "dfa\n";
    out << "alphabet:";
    for (const std::string& t : d.alphabet.tokens())
        out << ' ' << t;
    out << "\nstates:";
    for (State q = 0; q < d.num_states; ++q)
        out << " q" << q;
    out << "\ninitial: q" << d.initial;
    out << "\naccepting:";
    for (State q = 0; q < d.num_states; ++q)
        if (d.accepting[q])
            out << " q" << q;
    out << '\n';
    for (State q = 0; q < d.num_states; ++q)
        for (Symbol a = 0; a < d.alphabet.size(); ++a)
            out << 'q' << q << ' ' << d.alphabet.token(a) << " -> q" << d.next(q, a) << '\n';
    return out.str();
}

}  // namespace calf
