#include "calf/rational.hpp"

namespace calf {

namespace {

Integer parse_integer(std::string_view text) {
    if (text.empty())
        throw InputError("empty integer");
    std::size_t start = text[0] == '-' || text[0] == '+' ? 1 : 0;
    if (start == text.size())
        throw InputError("bare sign is not an integer");
    for (std::size_t i = start; i < text.size(); ++i)
        if (text[i] < '0' || text[i] > '9')
            throw InputError("bad integer '" + std::string(text) + "'");
    return Integer(std::string(text));
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0)
        throw InputError("rational '" + std::string(text) + "' has zero denominator");
    return make_rational(num, den);
}

std::string format_rational(const Rational& r) {
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace calf
