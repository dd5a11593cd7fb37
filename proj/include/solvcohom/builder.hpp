#pragma once

#include "solvcohom/bicomplex.hpp"
#include "solvcohom/generator.hpp"
#include "solvcohom/lattice.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace solvcohom {

struct InvalidCase : MathError {
    using MathError::MathError;
};

/// Homomorphism C^n -> C* of the form exp(hol·z + antihol·z̄).
struct Character {
    std::vector<Gq> hol;
    std::vector<Gq> antihol;

    bool hol_zero() const {
        for (const auto& x : hol)
            if (!x.is_zero()) return false;
        return true;
    }
    bool antihol_zero() const {
        for (const auto& x : antihol)
            if (!x.is_zero()) return false;
        return true;
    }
};

/// Which of the four character restrictions are identically 1 on the lattice.
struct CaseFlags {
    bool beta1_trivial = false;
    bool gamma1_trivial = false;
    bool beta1gamma1_trivial = false;
    bool beta1gamma1inv_trivial = false;
    friend bool operator==(const CaseFlags&, const CaseFlags&) = default;
};

/// Exponent tuples (s_1..s_m, t_1..t_m) with (β^s γ^t)|_Γ = 1. β_2 = β_1^{-1}
/// and γ_2 = γ_1^{-1} hold identically, so (1,1,0,..) and (0,..,1,1) are
/// always members.
inline IntegerLattice subgroup_from_flags(const CaseFlags& f) {
    const int m = 2;
    std::vector<IntVec> gens = {{1, 1, 0, 0}, {0, 0, 1, 1}};
    if (f.beta1_trivial) gens.push_back({1, 0, 0, 0});
    if (f.gamma1_trivial) gens.push_back({0, 0, 1, 0});
    if (f.beta1gamma1_trivial) gens.push_back({1, 0, 1, 0});
    if (f.beta1gamma1inv_trivial) gens.push_back({1, 0, -1, 0});
    return IntegerLattice(2 * m, std::move(gens));
}

inline CaseFlags flags_from_subgroup(const IntegerLattice& lat) {
    CaseFlags f;
    f.beta1_trivial = lat.contains({1, 0, 0, 0});
    f.gamma1_trivial = lat.contains({0, 0, 1, 0});
    f.beta1gamma1_trivial = lat.contains({1, 0, 1, 0});
    f.beta1gamma1inv_trivial = lat.contains({1, 0, -1, 0});
    return f;
}

/// Flags are consistent when they are exactly what their generated subgroup
/// reports (e.g. β_1 and γ_1 trivial forces both products trivial).
inline void check_flags_consistent(const CaseFlags& f) {
    if (!(flags_from_subgroup(subgroup_from_flags(f)) == f))
        throw InvalidCase("inconsistent case flags");
}

/// Everything the complex construction needs: sizes, the holomorphic
/// multipliers b_j = α_j^{-1}β_j attached to dz_j and dz̄_j on the B side
/// (their conjugates serve the B̄ side), and the triviality subgroup.
struct SplittingData {
    int n = 1;
    int m = 2;
    std::vector<Character> b_factors;     // holomorphic, one per fiber coordinate
    std::vector<Character> bbar_factors;  // = conj(b_factors), antiholomorphic
    IntegerLattice triviality;            // subgroup of Z^{2m}
    Gq c;                                 // T = exp(c·z); zero iff all multipliers trivial
    std::string family;
    std::string case_id;

    void check() const {
        if (n < 1 || m < 1) throw InvalidCase("bad splitting dimensions");
        if (static_cast<int>(b_factors.size()) != m ||
            static_cast<int>(bbar_factors.size()) != m)
            throw InvalidCase("factor count != m");
        if (triviality.dimension() != 2 * m) throw InvalidCase("triviality subgroup dimension");
        for (int j = 0; j < m; ++j) {
            const auto& b = b_factors[j];
            const auto& bb = bbar_factors[j];
            if (static_cast<int>(b.hol.size()) != n || !b.antihol_zero())
                throw InvalidCase("b factor must be holomorphic of length n");
            if (static_cast<int>(bb.antihol.size()) != n || !bb.hol_zero())
                throw InvalidCase("bbar factor must be antiholomorphic of length n");
            for (int k = 0; k < n; ++k)
                if (bb.antihol[k] != conj(b.hol[k]))
                    throw InvalidCase("bbar factor is not the conjugate of the b factor");
        }
        if (!triviality.contains(IntVec(2 * m, 0))) throw InvalidCase("0 not in subgroup");
    }
};

/// A bicomplex together with its typed generators; the builder outputs.
struct BuiltComplex {
    Bicomplex cx;
    std::map<Bidegree, std::vector<Generator>> gens;
    Gq render_c;
    int n = 1;
    int m = 2;
    std::map<Generator, std::pair<Bidegree, int>> index;

    std::optional<std::pair<Bidegree, int>> find(const Generator& g) const {
        auto it = index.find(g);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }

    const Generator& gen_at(Bidegree c, int i) const { return gens.at(c)[i]; }

    /// Sorts bases, renders labels, indexes, and assembles both differentials
    /// from the monomial rule. Every differential of a basis monomial must
    /// land on basis monomials.
    void finalize() {
        index.clear();
        cx.cells.clear();
        cx.del.clear();
        cx.delbar.clear();
        for (auto& [c, list] : gens) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
            auto& labels = cx.cells[c];
            for (int i = 0; i < static_cast<int>(list.size()); ++i) {
                index[list[i]] = {c, i};
                labels.push_back(render_label(list[i], render_c));
            }
        }
        for (const auto& [c, list] : gens) {
            Bidegree up{c.p + 1, c.q}, right{c.p, c.q + 1};
            SparseMat d(cx.dim(up), cx.dim(c));
            SparseMat db(cx.dim(right), cx.dim(c));
            for (int i = 0; i < static_cast<int>(list.size()); ++i) {
                for (const auto& t : del_terms(list[i], m)) {
                    auto at = find(t.gen);
                    if (!at || at->first != up) throw MathError("del leaves the complex");
                    d.add(at->second, i, t.coeff);
                }
                for (const auto& t : delbar_terms(list[i], m)) {
                    auto at = find(t.gen);
                    if (!at || at->first != right) throw MathError("delbar leaves the complex");
                    db.add(at->second, i, t.coeff);
                }
            }
            if (!d.entries.empty()) cx.del[c] = std::move(d);
            if (!db.entries.empty()) cx.delbar[c] = std::move(db);
        }
        cx.prune();
    }
};

namespace detail {

inline void enumerate_subsets(int size, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> subset;
    for (int mask = 0; mask < (1 << size); ++mask) {
        subset.clear();
        for (int i = 0; i < size; ++i)
            if (mask & (1 << i)) subset.push_back(i + 1);  // 1-based
        fn(subset);
    }
}

}  // namespace detail

/// All Eq.(7)-style monomials whose β/γ exponent tuple lies in the triviality
/// subgroup. ∂̄ vanishes identically on the result.
inline BuiltComplex build_B(const SplittingData& data) {
    data.check();
    BuiltComplex out;
    out.render_c = data.c;
    out.n = data.n;
    out.m = data.m;
    detail::enumerate_subsets(data.m, [&](const std::vector<int>& J) {
        detail::enumerate_subsets(data.m, [&](const std::vector<int>& L) {
            IntVec st(2 * data.m, 0);
            for (int j : J) st[j - 1] = 1;
            for (int l : L) st[data.m + l - 1] = 1;
            if (!data.triviality.contains(st)) return;
            std::vector<Gq> lambda(data.n);
            for (int j : J)
                for (int k = 0; k < data.n; ++k) lambda[k] += data.b_factors[j - 1].hol[k];
            for (int l : L)  // dz̄_l carries the same holomorphic multiplier as dz_l
                for (int k = 0; k < data.n; ++k) lambda[k] += data.b_factors[l - 1].hol[k];
            detail::enumerate_subsets(data.n, [&](const std::vector<int>& Ib) {
                detail::enumerate_subsets(data.n, [&](const std::vector<int>& Kb) {
                    Generator g;
                    g.lambda = lambda;
                    g.mu.assign(data.n, Gq());
                    std::vector<int> hol = J, antihol = L;
                    for (int k : Ib) hol.push_back(data.m + k);
                    for (int k : Kb) antihol.push_back(data.m + k);
                    g.hol = IndexSet(std::move(hol));
                    g.antihol = IndexSet(std::move(antihol));
                    out.gens[g.bidegree()].push_back(std::move(g));
                });
            });
        });
    });
    out.finalize();
    return out;
}

/// C_Γ = B_Γ + B̄_Γ: the label-level union of B and its conjugate (overlap:
/// generators with trivial multiplier and symmetric condition).
inline BuiltComplex build_C(const SplittingData& data) {
    BuiltComplex b = build_B(data);
    BuiltComplex out;
    out.render_c = b.render_c;
    out.n = b.n;
    out.m = b.m;
    out.gens = b.gens;
    for (const auto& [c, list] : b.gens) {
        auto& target = out.gens[{c.q, c.p}];
        for (const auto& g : list) target.push_back(g.conjugated());
    }
    out.finalize();
    return out;
}

/// The smallest cbba containing C_Γ: all pairwise products of B monomials
/// with B̄ monomials. Closed under ∂, ∂̄ and the wedge product.
struct ClosureAlgebra {
    BuiltComplex bc;

    /// Wedge of two basis monomials: scalar times another basis monomial, or
    /// nothing when the product vanishes.
    std::optional<std::pair<Gq, std::pair<Bidegree, int>>> wedge_basis(Bidegree c1, int i1,
                                                                       Bidegree c2, int i2) const {
        auto w = wedge(bc.gen_at(c1, i1), bc.gen_at(c2, i2));
        if (!w) return std::nullopt;
        auto at = bc.find(w->gen);
        if (!at) throw MathError("closure not multiplicatively closed");
        return std::make_pair(Gq(w->sign), *at);
    }
};

inline ClosureAlgebra build_closure(const SplittingData& data) {
    BuiltComplex b = build_B(data);
    ClosureAlgebra out;
    out.bc.render_c = b.render_c;
    out.bc.n = b.n;
    out.bc.m = b.m;
    for (const auto& [c1, list1] : b.gens)
        for (const auto& u : list1)
            for (const auto& [c2, list2] : b.gens)
                for (const auto& v : list2) {
                    auto w = wedge(u, v.conjugated());
                    if (w) out.bc.gens[w->gen.bidegree()].push_back(w->gen);
                }
    out.bc.finalize();
    return out;
}

// --- lattice arithmetic of the g8 classification ---------------------------

/// Symbolic shape of F_A(n): the rational 1/l with Re F = π/(l·Im A), or
/// Re F = 0 when l is infinite; plus whether an irrational log part occurs.
struct FDescriptor {
    bool compatible = false;
    bool l_infinite = false;
    int l = 0;
    bool log_part = false;
};

inline FDescriptor lattice_descriptor(int n) {
    FDescriptor d;
    if (n == 2) return d;  // F_A(2) = 0 degenerates the lattice
    d.compatible = true;
    if (n >= 3) {
        d.l_infinite = true;
        d.log_part = true;
    } else if (n <= -3) {
        d.l = 2;
        d.log_part = true;
    } else if (n == -2) {
        d.l = 2;
    } else if (n == -1) {
        d.l = 3;
    } else if (n == 0) {
        d.l = 4;
    } else {  // n == 1
        d.l = 6;
    }
    return d;
}

inline bool is_lattice_compatible(int n) { return lattice_descriptor(n).compatible; }

/// Triviality flags for Γ' = F_A(n)Z ⊕ F_A(n')Z, decided by exact rational
/// arithmetic on the l-values. Supports Re A ∈ {0, 1}; these are the two
/// regimes where every condition is rational. Characters restricted to a
/// generator with a log part are never trivial unless they only see Re z
/// (which vanishes or equals π/(2 Im A) there).
inline CaseFlags classify_g8(const Gq& A, int n, int nprime) {
    if (A.im == 0) throw InvalidCase("classify_g8: Im A must be nonzero");
    if (A.re != 0 && A.re != 1) throw InvalidCase("classify_g8: Re A must be 0 or 1");
    if (n == nprime) throw InvalidCase("classify_g8: n and n' must differ");
    if (n == 2 || nprime == 2) throw InvalidCase("classify_g8: F_A(2) = 0 is not a lattice");

    const Rational t = A.im;
    const bool re_one = A.re == 1;

    struct Per {
        bool beta, gamma, prod, quot;
    };
    auto on_generator = [&](int gen_n) -> Per {
        FDescriptor d = lattice_descriptor(gen_n);
        if (d.l_infinite) {
            // Re F = 0: every condition that only sees Re z is satisfied;
            // with Re A = 1 the others pick up the log part.
            if (!re_one) return {true, true, true, true};
            return {false, false, false, true};
        }
        if (re_one && d.log_part) return {false, false, false, d.l == 2};
        Rational lt = Rational(d.l) * t;
        auto integral = [&](const Rational& num) { return is_integer(num / lt); };
        Per out{};
        if (!re_one) {
            out.beta = integral(1 + t);
            out.gamma = integral(1 - t);
            out.prod = integral(Rational(2));
        } else {
            out.beta = integral(2 + t);
            out.gamma = integral(t - 2);
            out.prod = integral(Rational(4));
        }
        out.quot = d.l == 2;
        return out;
    };

    Per a = on_generator(n), b = on_generator(nprime);
    CaseFlags f;
    f.beta1_trivial = a.beta && b.beta;
    f.gamma1_trivial = a.gamma && b.gamma;
    f.beta1gamma1_trivial = a.prod && b.prod;
    f.beta1gamma1inv_trivial = a.quot && b.quot;
    check_flags_consistent(f);
    return f;
}

/// The seven cases of the g8 classification in roman-numeral order.
inline std::string g8_case_name(const CaseFlags& f) {
    if (f.beta1_trivial && f.gamma1_trivial) return "vii";
    if (f.beta1_trivial) return "ii";
    if (f.gamma1_trivial) return "iii";
    if (f.beta1gamma1_trivial && f.beta1gamma1inv_trivial) return "vi";
    if (f.beta1gamma1_trivial) return "v";
    if (f.beta1gamma1inv_trivial) return "iv";
    return "i";
}

/// g2 (α > 0) lattices: b measured in units of π/(2 Re A_n); "generic" means
/// any non-integer value.
inline CaseFlags classify_g2(const std::optional<Rational>& q) {
    CaseFlags f;
    f.beta1gamma1inv_trivial = true;
    if (q && is_integer(*q)) {
        f.beta1gamma1_trivial = true;
        if (numerator(*q) % 2 != 0) f.beta1_trivial = f.gamma1_trivial = true;
    }
    check_flags_consistent(f);
    return f;
}

/// g1 lattices: b measured in units of π/2; even r is case (i), odd r case
/// (ii), non-integers case (iii).
inline CaseFlags classify_g1(const std::optional<Rational>& r) {
    CaseFlags f;
    f.beta1gamma1inv_trivial = true;
    if (r && is_integer(*r)) {
        f.beta1gamma1_trivial = true;
        if (numerator(*r) % 2 == 0) f.beta1_trivial = f.gamma1_trivial = true;
    }
    check_flags_consistent(f);
    return f;
}

// --- presets ---------------------------------------------------------------

enum class Family { g1, g2_alpha0, g2_alpha_pos, g8 };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::g1: return "g1";
        case Family::g2_alpha0: return "g2a0";
        case Family::g2_alpha_pos: return "g2";
        case Family::g8: return "g8";
    }
    return "?";
}

namespace detail {

/// n=1, m=2 data with b_1 = T^{-1}, b_2 = T for T = exp(c·z_3).
inline SplittingData splitting_nm12(const Gq& c, const IntegerLattice& lat, Family fam,
                                    std::string case_id) {
    SplittingData d;
    d.n = 1;
    d.m = 2;
    d.c = c;
    d.b_factors = {Character{{-c}, {Gq()}}, Character{{c}, {Gq()}}};
    d.bbar_factors = {Character{{Gq()}, {-conj(c)}}, Character{{Gq()}, {conj(c)}}};
    d.triviality = lat;
    d.family = family_name(fam);
    d.case_id = std::move(case_id);
    d.check();
    return d;
}

}  // namespace detail

/// Representative parameter substitution per family; only the zero pattern
/// of the structure constants matters for dimensions and decompositions.
/// g1: A=1 (c=2); g2 α>0: A=1+i (c=2); g2 α=0: A=i (trivial multiplier,
/// c=0); g8: A=-i (c=2i), except case (v) which needs Re A = 1 (A=1+i,
/// c=-2+2i).
inline SplittingData preset_g1(const CaseFlags& f, std::string case_id) {
    return detail::splitting_nm12(Gq(2), subgroup_from_flags(f), Family::g1, std::move(case_id));
}

inline SplittingData preset_g1(const std::string& token) {
    std::optional<Rational> r;
    if (token == "i")
        r = Rational(0);
    else if (token == "ii")
        r = Rational(1);
    else if (token != "iii")
        throw InvalidCase("unknown g1 case: " + token);
    return preset_g1(classify_g1(r), token);
}

inline SplittingData preset_g2_alpha_pos(const CaseFlags& f, std::string case_id) {
    return detail::splitting_nm12(Gq(2), subgroup_from_flags(f), Family::g2_alpha_pos,
                                  std::move(case_id));
}

inline SplittingData preset_g2_alpha_pos(const std::string& token) {
    std::optional<Rational> q;
    if (token == "qodd")
        q = Rational(1);
    else if (token == "qeven")
        q = Rational(2);
    else if (token != "generic")
        throw InvalidCase("unknown g2 case: " + token);
    return preset_g2_alpha_pos(classify_g2(q), token);
}

inline SplittingData preset_g2_alpha0(const std::string& x3) {
    CaseFlags f;
    f.beta1gamma1_trivial = true;
    if (x3 == "pi/2")
        f.beta1gamma1inv_trivial = true;
    else if (x3 != "pi/3" && x3 != "pi/4" && x3 != "pi/6")
        throw InvalidCase("g2_alpha0 admits x3 in {pi/2, pi/3, pi/4, pi/6}");
    std::string case_id = x3 == "pi/2" ? "pi2" : "pi" + x3.substr(3);
    return detail::splitting_nm12(Gq(), subgroup_from_flags(f), Family::g2_alpha0,
                                  std::move(case_id));
}

inline SplittingData preset_g8(const CaseFlags& f, std::string case_id) {
    // c = -(A + conj(A) - 2i)
    Gq A = g8_case_name(f) == "v" ? Gq(1, 1) : Gq(0, -1);
    Gq c = -(A + conj(A) - Gq(0, 2));
    return detail::splitting_nm12(c, subgroup_from_flags(f), Family::g8, std::move(case_id));
}

inline SplittingData preset_g8(const std::string& token) {
    CaseFlags f;
    if (token == "i") {
    } else if (token == "ii") {
        f.beta1_trivial = true;
    } else if (token == "iii") {
        f.gamma1_trivial = true;
    } else if (token == "iv") {
        f.beta1gamma1inv_trivial = true;
    } else if (token == "v") {
        f.beta1gamma1_trivial = true;
    } else if (token == "vi") {
        f.beta1gamma1_trivial = f.beta1gamma1inv_trivial = true;
    } else if (token == "vii") {
        f = {true, true, true, true};
    } else {
        throw InvalidCase("unknown g8 case: " + token);
    }
    check_flags_consistent(f);
    return preset_g8(f, token);
}

}  // namespace solvcohom
