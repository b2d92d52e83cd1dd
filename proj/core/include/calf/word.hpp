// word.hpp -- alphabets and words over them.
//
// Symbols are dense indices into an Alphabet; words store indices, not
// tokens, and need the alphabet only for (de)serialization. The textual
// form joins tokens with single spaces; the empty word is the literal
// "eps", which is why "eps" is reserved and may not name a symbol.

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "calf/errors.hpp"

namespace calf {

using Symbol = std::uint32_t;

class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> tokens);

    std::size_t size() const { return tokens_.size(); }
    const std::string& token(Symbol s) const;
    std::optional<Symbol> index_of(std::string_view token) const;
    const std::vector<std::string>& tokens() const { return tokens_; }

    bool operator==(const Alphabet& other) const { return tokens_ == other.tokens_; }
    bool operator!=(const Alphabet& other) const { return !(*this == other); }

private:
    std::vector<std::string> tokens_;
    std::map<std::string, Symbol, std::less<>> index_;
};

struct Word {
    std::vector<Symbol> syms;

    Word() = default;
    explicit Word(std::vector<Symbol> s) : syms(std::move(s)) {}

    std::size_t size() const { return syms.size(); }
    bool empty() const { return syms.empty(); }

    Word append(Symbol a) const;
    Word concat(const Word& other) const;
    Word prefix(std::size_t len) const;
    Word reversed() const;

    auto operator<=>(const Word&) const = default;
};

// Orders by length first, then lexicographically by symbol index. This is
// the canonical order for counterexamples and test suites.
bool length_lex_less(const Word& a, const Word& b);

std::string format_word(const Alphabet& a, const Word& w);
Word parse_word(const Alphabet& a, std::string_view text);

// All words of length <= n in length-lex order. Throws on overflow-sized
// requests only implicitly (vectors); callers keep n small.
std::vector<Word> words_up_to(const Alphabet& a, std::size_t n);

// All length-1 words, in alphabet order.
std::vector<Word> single_symbol_words(const Alphabet& a);

// eps, p1, p1p2, ..., w itself.
std::vector<Word> prefixes(const Word& w);

}  // namespace calf
