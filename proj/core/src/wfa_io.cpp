#include "calf/wfa_io.hpp"

#include <sstream>

namespace calf {

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

struct LineReader {
    std::istringstream in;
    int line_number = 0;

    explicit LineReader(std::string_view text) : in(std::string(text)) {}

    std::optional<std::pair<std::vector<std::string>, int>> next() {
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_number;
            if (auto hash = raw.find('#'); hash != std::string::npos)
                raw.erase(hash);
            auto toks = split_tokens(raw);
            if (!toks.empty())
                return std::make_pair(toks, line_number);
        }
        return std::nullopt;
    }
};

Rational parse_entry(const std::string& text, int line) {
    try {
        return parse_rational(text);
    } catch (const InputError& e) {
        throw FormatError(e.what(), line);
    }
}

RatVec parse_vector(const std::vector<std::string>& toks, std::size_t dim, int line) {
    if (toks.size() != dim)
        throw FormatError("expected " + std::to_string(dim) + " entries, got " +
                              std::to_string(toks.size()),
                          line);
    RatVec v;
    for (const std::string& t : toks)
        v.push_back(parse_entry(t, line));
    return v;
}

}  // namespace

Wfa parse_wfa(std::string_view text) {
    LineReader reader(text);

    auto header = reader.next();
    if (!header || header->first != std::vector<std::string>{"wfa"})
        throw FormatError("expected 'wfa' header", header ? header->second : 1);

    auto expect = [&](const std::string& key) {
        auto line = reader.next();
        if (!line || line->first.empty() || line->first[0] != key + ":")
            throw FormatError("expected '" + key + ":' line",
                              line ? line->second : reader.line_number);
        auto toks = line->first;
        toks.erase(toks.begin());
        return std::make_pair(toks, line->second);
    };

    auto [alphabet_tokens, alphabet_line] = expect("alphabet");
    Alphabet alphabet;
    try {
        alphabet = Alphabet(alphabet_tokens);
    } catch (const InputError& e) {
        throw FormatError(e.what(), alphabet_line);
    }

    auto [dim_tokens, dim_line] = expect("dim");
    if (dim_tokens.size() != 1)
        throw FormatError("'dim:' line needs exactly one number", dim_line);
    std::uint32_t dim = 0;
    try {
        dim = static_cast<std::uint32_t>(std::stoul(dim_tokens[0]));
    } catch (const std::exception&) {
        throw FormatError("bad dimension '" + dim_tokens[0] + "'", dim_line);
    }

    Wfa w;
    w.alphabet = alphabet;
    w.dim = dim;

    auto [init_tokens, init_line] = expect("init");
    w.init = parse_vector(init_tokens, dim, init_line);
    auto [out_tokens, out_line] = expect("out");
    w.out = parse_vector(out_tokens, dim, out_line);

    w.trans.assign(alphabet.size(), RatMat{});
    std::vector<bool> seen(alphabet.size(), false);
    while (auto line = reader.next()) {
        auto toks = line->first;
        if (toks[0].empty() || toks[0].back() != ':')
            throw FormatError("expected '<symbol>: matrix' line", line->second);
        std::string name = toks[0].substr(0, toks[0].size() - 1);
        auto sym = alphabet.index_of(name);
        if (!sym)
            throw FormatError("unknown symbol '" + name + "'", line->second);
        if (seen[*sym])
            throw FormatError("duplicate matrix for symbol '" + name + "'", line->second);
        seen[*sym] = true;
        toks.erase(toks.begin());

        RatMat m;
        std::vector<std::string> row;
        for (const std::string& t : toks) {
            if (t == "/") {
                m.push_back(parse_vector(row, dim, line->second));
                row.clear();
            } else {
                row.push_back(t);
            }
        }
        if (!row.empty() || m.size() < dim)
            m.push_back(parse_vector(row, dim, line->second));
        if (m.size() != dim)
            throw FormatError("expected " + std::to_string(dim) + " matrix rows, got " +
                                  std::to_string(m.size()),
                              line->second);
        w.trans[*sym] = std::move(m);
    }
    for (Symbol a = 0; a < alphabet.size(); ++a)
        if (!seen[a])
            throw FormatError("missing matrix for symbol '" + alphabet.token(a) + "'",
                              reader.line_number);

    w.validate();
    return w;
}

std::string serialize(const Wfa& w) {
    std::ostringstream out;
    out << "wfa\n";
    out << "alphabet:";
    for (const std::string& t : w.alphabet.tokens())
        out << ' ' << t;
    out << "\ndim: " << w.dim;
    out << "\ninit:";
    for (const Rational& r : w.init)
        out << ' ' << format_rational(r);
    out << "\nout:";
    for (const Rational& r : w.out)
        out << ' ' << format_rational(r);
    out << '\n';
    for (Symbol a = 0; a < w.alphabet.size(); ++a) {
        out << w.alphabet.token(a) << ':';
        for (std::size_t i = 0; i < w.dim; ++i) {
            if (i > 0)
                out << " /";
            for (const Rational& r : w.trans[a][i])
                out << ' ' << format_rational(r);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace calf
