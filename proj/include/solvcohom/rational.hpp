#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace solvcohom {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// cpp_rational's two-argument constructor is (value, precision), not
// (num, den); always build fractions through this helper.
inline Rational ratio(const Int& num, const Int& den) {
    if (den == 0) throw MathError("division by zero");
    return Rational(num) / Rational(den);
}

inline Rational ratio(long num, long den) { return ratio(Int(num), Int(den)); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline std::string to_string(const Rational& q) {
    if (is_integer(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

// Parses "a" or "a/b" with an optional leading sign.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw MathError("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        return ratio(num, den);
    } catch (const std::runtime_error&) {
        throw MathError("bad rational literal: " + s);
    }
}

}  // namespace solvcohom
