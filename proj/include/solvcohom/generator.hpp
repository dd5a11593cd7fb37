#pragma once

#include "solvcohom/forms.hpp"
#include "solvcohom/gaussian.hpp"
#include "solvcohom/shapes.hpp"

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace solvcohom {

/// Basis monomial of the twisted form algebra: an exponential multiplier
/// exp(Λ·z + M·z̄) in the base coordinates times the wedge monomial
/// dz_I ∧ dz̄_K. Coordinates 1..m are fiber, m+1..m+n are base; Λ and M
/// have one entry per base coordinate. Distinct tuples are linearly
/// independent forms, so (Λ, M, I, K) is the dedup label.
struct Generator {
    std::vector<Gq> lambda;  // holomorphic exponent coefficients
    std::vector<Gq> mu;      // antiholomorphic exponent coefficients
    IndexSet hol;            // I
    IndexSet antihol;        // K

    friend auto operator<=>(const Generator&, const Generator&) = default;

    Bidegree bidegree() const { return {hol.size(), antihol.size()}; }

    bool untwisted() const {
        for (const auto& x : lambda)
            if (!x.is_zero()) return false;
        for (const auto& x : mu)
            if (!x.is_zero()) return false;
        return true;
    }

    /// Conjugate monomial's label. The underlying form also picks up
    /// (-1)^{|I||K|} from reordering, which label-level bookkeeping ignores.
    Generator conjugated() const {
        Generator g;
        g.lambda.reserve(mu.size());
        for (const auto& x : mu) g.lambda.push_back(conj(x));
        g.mu.reserve(lambda.size());
        for (const auto& x : lambda) g.mu.push_back(conj(x));
        g.hol = antihol;
        g.antihol = hol;
        return g;
    }
};

struct WedgeTerm {
    int sign;  // +1 / -1
    Generator gen;
};

/// u ∧ v as a signed monomial; absent when a differential repeats. The sign
/// is the Koszul sign of moving v's holomorphic factors across u's
/// antiholomorphic ones plus both merge signs.
inline std::optional<WedgeTerm> wedge(const Generator& u, const Generator& v) {
    auto h = merge_with_sign(u.hol, v.hol);
    if (!h) return std::nullopt;
    auto a = merge_with_sign(u.antihol, v.antihol);
    if (!a) return std::nullopt;
    int sign = h->sign * a->sign;
    if (u.antihol.size() % 2 != 0 && v.hol.size() % 2 != 0) sign = -sign;
    WedgeTerm out{sign, {}};
    out.gen.lambda.resize(u.lambda.size());
    for (std::size_t i = 0; i < u.lambda.size(); ++i) out.gen.lambda[i] = u.lambda[i] + v.lambda[i];
    out.gen.mu.resize(u.mu.size());
    for (std::size_t i = 0; i < u.mu.size(); ++i) out.gen.mu[i] = u.mu[i] + v.mu[i];
    out.gen.hol = std::move(h->set);
    out.gen.antihol = std::move(a->set);
    return out;
}

struct DiffTerm {
    Gq coeff;
    Generator gen;
};

/// ∂(exp(Λz+Mz̄) dz_I dz̄_K) = Σ_k Λ_k dz_{m+k} ∧ (...); one signed monomial
/// per base coordinate appearing in Λ.
inline std::vector<DiffTerm> del_terms(const Generator& g, int m) {
    std::vector<DiffTerm> out;
    for (std::size_t k = 0; k < g.lambda.size(); ++k) {
        if (g.lambda[k].is_zero()) continue;
        auto ins = insert_with_sign(m + 1 + static_cast<int>(k), g.hol);
        if (!ins) continue;
        Generator t = g;
        t.hol = ins->set;
        out.push_back({g.lambda[k] * Gq(ins->sign), std::move(t)});
    }
    return out;
}

/// ∂̄ analog: dz̄_{m+k} crosses all of dz_I first, contributing (-1)^{|I|}.
inline std::vector<DiffTerm> delbar_terms(const Generator& g, int m) {
    std::vector<DiffTerm> out;
    int cross = g.hol.size() % 2 == 0 ? 1 : -1;
    for (std::size_t k = 0; k < g.mu.size(); ++k) {
        if (g.mu[k].is_zero()) continue;
        auto ins = insert_with_sign(m + 1 + static_cast<int>(k), g.antihol);
        if (!ins) continue;
        Generator t = g;
        t.antihol = ins->set;
        out.push_back({g.mu[k] * Gq(cross * ins->sign), std::move(t)});
    }
    return out;
}

/// Label rendering. For the n = 1 families every multiplier is an integer
/// power of a single T = exp(c·z) (and conjugates), so labels read
/// "T^-2 Tb^2 dz_{121b2b}" in ascii or "T^-2T̄^2 dz_{121̄2̄}" otherwise.
/// bar_ascii selects 'b' suffixes over combining overlines.
inline std::string render_label(const Generator& g, const Gq& c, bool bar_ascii = true) {
    std::string mult;
    auto power = [&](const std::string& sym, const Gq& coeff, const Gq& unit) {
        if (coeff.is_zero()) return;
        if (unit.is_zero()) throw MathError("twisted generator with zero family constant");
        Gq e = coeff / unit;
        if (e.im != 0 || !is_integer(e.re))
            throw MathError("multiplier exponent is not an integer multiple of c");
        if (!mult.empty()) mult += bar_ascii ? " " : "";
        mult += sym;
        if (e.re != 1) mult += "^" + to_string(e.re);
    };
    if (g.lambda.size() == 1) {
        power("T", g.lambda[0], c);
        power(bar_ascii ? "Tb" : "T̄", g.mu[0], conj(c));
    } else {
        // general base dimension: explicit exponent vectors
        std::string lam, mu;
        for (const auto& x : g.lambda) lam += (lam.empty() ? "" : ",") + to_string(x);
        for (const auto& x : g.mu) mu += (mu.empty() ? "" : ",") + to_string(x);
        if (lam.find_first_not_of("0,") != std::string::npos ||
            mu.find_first_not_of("0,") != std::string::npos)
            mult = "E[" + lam + "|" + mu + "]";
    }
    if (g.hol.empty() && g.antihol.empty()) return mult.empty() ? "1" : mult;
    std::string forms = "dz_{" + render_indices(g.hol, g.antihol, bar_ascii) + "}";
    return mult.empty() ? forms : mult + " " + forms;
}

}  // namespace solvcohom
