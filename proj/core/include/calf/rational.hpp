// rational.hpp -- exact rationals for weighted automata.
//
// Backed by boost::multiprecision::cpp_rational, which keeps values in
// canonical form (reduced, positive denominator). Textual form is "p" or
// "p/q" with an optional leading minus on p.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "calf/errors.hpp"

namespace calf {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0)
        throw InputError("rational with zero denominator");
    // Division normalizes sign and reduces; the two-argument constructor
    // rejects negative denominators.
    return Rational(num) / Rational(den);
}

}  // namespace calf
