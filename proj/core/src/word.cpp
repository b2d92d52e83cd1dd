#include "calf/word.hpp"

#include <algorithm>
#include <sstream>

namespace calf {

namespace {

bool has_whitespace(std::string_view s) {
    return s.find_first_of(" \t\r\n\v\f") != std::string_view::npos;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
    if (tokens_.empty())
        throw InputError("alphabet must not be empty");
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        const std::string& t = tokens_[i];
        if (t.empty())
            throw InputError("alphabet token must not be empty");
        if (has_whitespace(t))
            throw InputError("alphabet token '" + t + "' contains whitespace");
        if (t == "eps")
            throw InputError("alphabet token 'eps' is reserved for the empty word");
        auto [it, inserted] = index_.emplace(t, static_cast<Symbol>(i));
        if (!inserted)
            throw InputError("duplicate alphabet token '" + t + "'");
    }
}

const std::string& Alphabet::token(Symbol s) const {
    if (s >= tokens_.size())
        throw InputError("symbol index " + std::to_string(s) + " out of range");
    return tokens_[s];
}

std::optional<Symbol> Alphabet::index_of(std::string_view token) const {
    auto it = index_.find(token);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

Word Word::append(Symbol a) const {
    Word w = *this;
    w.syms.push_back(a);
    return w;
}

Word Word::concat(const Word& other) const {
    Word w = *this;
    w.syms.insert(w.syms.end(), other.syms.begin(), other.syms.end());
    return w;
}

Word Word::prefix(std::size_t len) const {
    Word w;
    w.syms.assign(syms.begin(), syms.begin() + std::min(len, syms.size()));
    return w;
}

Word Word::reversed() const {
    Word w = *this;
    std::reverse(w.syms.begin(), w.syms.end());
    return w;
}

bool length_lex_less(const Word& a, const Word& b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    return a.syms < b.syms;
}

std::string format_word(const Alphabet& a, const Word& w) {
    if (w.empty())
        return "eps";
    std::ostringstream out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0)
            out << ' ';
        out << a.token(w.syms[i]);
    }
    return out.str();
}

Word parse_word(const Alphabet& a, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<std::string> parts;
    std::string tok;
    while (in >> tok)
        parts.push_back(tok);
    if (parts.size() == 1 && parts[0] == "eps")
        return Word{};
    Word w;
    for (const std::string& p : parts) {
        auto s = a.index_of(p);
        if (!s)
            throw InputError("unknown symbol token '" + p + "'");
        w.syms.push_back(*s);
    }
    return w;
}

std::vector<Word> words_up_to(const Alphabet& a, std::size_t n) {
    std::vector<Word> out;
    out.emplace_back();
    std::size_t level_begin = 0;
    for (std::size_t len = 1; len <= n; ++len) {
        std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i)
            for (Symbol s = 0; s < a.size(); ++s)
                out.push_back(out[i].append(s));
        level_begin = level_end;
    }
    return out;
}

std::vector<Word> single_symbol_words(const Alphabet& a) {
    std::vector<Word> out;
    for (Symbol s = 0; s < a.size(); ++s)
        out.push_back(Word{}.append(s));
    return out;
}

std::vector<Word> prefixes(const Word& w) {
    std::vector<Word> out;
    for (std::size_t len = 0; len <= w.size(); ++len)
        out.push_back(w.prefix(len));
    return out;
}

}  // namespace calf
