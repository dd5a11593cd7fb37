#pragma once

#include "solvcohom/gaussian.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace solvcohom {

struct SalamonParseError : MathError {
    std::size_t position;
    SalamonParseError(std::string msg, std::size_t pos)
        : MathError(msg + " at position " + std::to_string(pos)), position(pos) {}
};

/// Structure constants c_{ij}^k (i < j) with de^k = Σ c_{ij}^k e^i ∧ e^j.
struct StructureConstants {
    int dim = 0;
    std::map<std::tuple<int, int, int>, Gq> c;  // (i, j, k) with i < j

    Gq at(int i, int j, int k) const {
        if (i == j) return {};
        int sign = 1;
        if (i > j) {
            std::swap(i, j);
            sign = -1;
        }
        auto it = c.find({i, j, k});
        if (it == c.end()) return {};
        return Gq(sign) * it->second;
    }
};

/// Parses structure equations in the shorthand "(e^{15},-e^{25},0,...)",
/// one comma-separated entry per de^k. Entries are signed sums of monomials
/// `[coeff][symbol]e^{ij}`; `bindings` supplies values for symbolic
/// coefficients. Rejects malformed tokens with their position and indices
/// outside 1..dim.
inline StructureConstants parse_salamon(const std::string& s,
                                        const std::map<std::string, Gq>& bindings = {}) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    };
    auto expect = [&](char ch) {
        skip_ws();
        if (pos >= s.size() || s[pos] != ch)
            throw SalamonParseError(std::string("expected '") + ch + "'", pos);
        ++pos;
    };

    // First pass: split the top-level list to learn the dimension.
    skip_ws();
    expect('(');
    std::vector<std::string> entries;
    {
        std::string cur;
        int depth = 0;
        std::size_t start = pos;
        for (;; ++pos) {
            if (pos >= s.size()) throw SalamonParseError("unterminated list", start);
            char ch = s[pos];
            if (ch == '{')
                ++depth;
            else if (ch == '}')
                --depth;
            if (depth == 0 && (ch == ',' || ch == ')')) {
                entries.push_back(cur);
                cur.clear();
                if (ch == ')') {
                    ++pos;
                    break;
                }
            } else {
                cur += ch;
            }
        }
    }

    StructureConstants out;
    out.dim = static_cast<int>(entries.size());

    // Second pass: parse each entry as a signed monomial sum.
    std::size_t entry_base = s.find('(') + 1;
    for (int k = 1; k <= out.dim; ++k) {
        const std::string& e = entries[k - 1];
        std::size_t i = 0;
        auto fail = [&](const std::string& msg, std::size_t at) -> SalamonParseError {
            return SalamonParseError(msg, entry_base + at);
        };
        auto skip = [&] {
            while (i < e.size() && std::isspace(static_cast<unsigned char>(e[i]))) ++i;
        };
        skip();
        if (i < e.size() && e[i] == '0' && i + 1 == e.size()) {
            entry_base += e.size() + 1;
            continue;
        }
        if (i == e.size()) throw fail("empty entry", i);
        bool first = true;
        while (true) {
            skip();
            if (i == e.size()) break;
            int sign = 1;
            if (e[i] == '+' || e[i] == '-') {
                sign = e[i] == '-' ? -1 : 1;
                ++i;
            } else if (!first) {
                throw fail("expected '+' or '-'", i);
            }
            first = false;
            skip();
            // optional coefficient: rational literal and/or bound symbol
            Gq coeff(sign);
            std::size_t num_start = i;
            while (i < e.size() && (std::isdigit(static_cast<unsigned char>(e[i])) || e[i] == '/'))
                ++i;
            if (i > num_start) coeff *= Gq(parse_rational(e.substr(num_start, i - num_start)));
            std::size_t sym_start = i;
            while (i < e.size() && e[i] != 'e' && !std::isspace(static_cast<unsigned char>(e[i])) &&
                   e[i] != '+' && e[i] != '-')
                ++i;
            if (i > sym_start) {
                std::string sym = e.substr(sym_start, i - sym_start);
                auto it = bindings.find(sym);
                if (it == bindings.end()) throw fail("unbound symbol '" + sym + "'", sym_start);
                coeff *= it->second;
            }
            skip();
            if (i >= e.size() || e[i] != 'e') throw fail("expected e^{ij}", i);
            ++i;
            if (i >= e.size() || e[i] != '^') throw fail("expected '^'", i);
            ++i;
            if (i >= e.size() || e[i] != '{') throw fail("expected '{'", i);
            ++i;
            std::vector<int> idx;
            while (i < e.size() && std::isdigit(static_cast<unsigned char>(e[i]))) {
                idx.push_back(e[i] - '0');
                ++i;
            }
            if (i >= e.size() || e[i] != '}') throw fail("expected '}'", i);
            ++i;
            if (idx.size() != 2) throw fail("e^{ij} needs exactly two indices", i);
            int a = idx[0], b = idx[1];
            if (a < 1 || a > out.dim || b < 1 || b > out.dim)
                throw fail("index out of range 1.." + std::to_string(out.dim), i);
            if (a == b) throw fail("repeated index in e^{ij}", i);
            int flip = 1;
            if (a > b) {
                std::swap(a, b);
                flip = -1;
            }
            out.c[{a, b, k}] += coeff * Gq(flip);
        }
        entry_base += e.size() + 1;
    }
    std::erase_if(out.c, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

}  // namespace solvcohom
