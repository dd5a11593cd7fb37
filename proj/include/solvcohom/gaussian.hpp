#pragma once

#include "solvcohom/rational.hpp"

#include <compare>
#include <ostream>
#include <string>

namespace solvcohom {

/// Element of Q(i), the coefficient field for all linear algebra here.
/// Components are arbitrary-precision rationals kept in canonical form
/// (lowest terms, positive denominator) by the backend, so equality is
/// structural.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(long r) : re(r) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(long r, long i) : re(r), im(i) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }

    friend bool operator==(const GaussianRational&, const GaussianRational&) = default;

    // Lexicographic; used only as an ordering for map keys and canonical sorts.
    friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
        if (a.re < b.re) return std::strong_ordering::less;
        if (b.re < a.re) return std::strong_ordering::greater;
        if (a.im < b.im) return std::strong_ordering::less;
        if (b.im < a.im) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    GaussianRational operator-() const { return {Rational(-re), Rational(-im)}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }

    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        return a * inv(b);
    }

    friend GaussianRational conj(const GaussianRational& a) { return {a.re, Rational(-a.im)}; }

    /// Squared modulus; a rational, zero iff a == 0.
    friend Rational norm(const GaussianRational& a) { return a.re * a.re + a.im * a.im; }

    friend GaussianRational inv(const GaussianRational& a) {
        Rational n = norm(a);
        if (n == 0) throw MathError("division by zero in Q(i)");
        return {a.re / n, -a.im / n};
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& a) {
        return os << to_string(a);
    }

    /// "a/b+c/d*i" with zero parts omitted, e.g. "2", "i", "-1/2*i", "1-i".
    friend std::string to_string(const GaussianRational& a) {
        if (a.is_zero()) return "0";
        std::string out;
        if (a.re != 0) out = to_string(a.re);
        if (a.im != 0) {
            std::string ipart;
            if (a.im == 1)
                ipart = "i";
            else if (a.im == -1)
                ipart = "-i";
            else
                ipart = to_string(a.im) + "*i";
            if (!out.empty() && ipart[0] != '-') out += "+";
            out += ipart;
        }
        return out;
    }
};

using Gq = GaussianRational;

inline Gq gq_i() { return Gq(0, 1); }

/// Parses the grammar emitted by to_string: signed terms "a/b" and "c/d*i"
/// (also bare "i"), at most one of each, e.g. "2", "-1/2*i", "1+i", "3-2*i".
inline Gq parse_gaussian(const std::string& input) {
    std::string s;
    for (char c : input)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw MathError("empty Q(i) literal");

    Gq result;
    bool seen_re = false, seen_im = false;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t start = pos;
        if (s[pos] == '+' || s[pos] == '-') ++pos;
        while (pos < s.size() && s[pos] != '+' && s[pos] != '-') ++pos;
        std::string term = s.substr(start, pos - start);
        if (term.empty() || term == "+" || term == "-")
            throw MathError("bad Q(i) literal: " + input);

        bool neg = term[0] == '-';
        if (term[0] == '+' || term[0] == '-') term.erase(0, 1);

        bool imaginary = !term.empty() && term.back() == 'i';
        if (imaginary) {
            term.pop_back();
            if (!term.empty() && term.back() == '*') term.pop_back();
        }
        Rational value = term.empty() ? Rational(1) : parse_rational(term);
        if (term.empty() && !imaginary) throw MathError("bad Q(i) literal: " + input);
        if (neg) value = -value;

        if (imaginary) {
            if (seen_im) throw MathError("repeated imaginary part: " + input);
            result.im = value;
            seen_im = true;
        } else {
            if (seen_re) throw MathError("repeated real part: " + input);
            result.re = value;
            seen_re = true;
        }
    }
    return result;
}

}  // namespace solvcohom
