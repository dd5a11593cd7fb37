#pragma once

#include "solvcohom/linalg.hpp"
#include "solvcohom/shapes.hpp"

#include <map>
#include <string>
#include <vector>

namespace solvcohom {

/// Bounded double complex over Q(i): ordered labeled basis per bidegree,
/// sparse ∂ (bidegree (1,0)) and ∂̄ (bidegree (0,1)) matrices. Absent
/// matrices are zero. The differentials anticommute: ∂∂̄ + ∂̄∂ = 0.
struct Bicomplex {
    std::map<Bidegree, std::vector<std::string>> cells;
    std::map<Bidegree, SparseMat> del;     // at c: A^c -> A^{c+(1,0)}
    std::map<Bidegree, SparseMat> delbar;  // at c: A^c -> A^{c+(0,1)}

    friend bool operator==(const Bicomplex&, const Bicomplex&) = default;

    int dim(Bidegree c) const {
        auto it = cells.find(c);
        return it == cells.end() ? 0 : static_cast<int>(it->second.size());
    }

    int total_dim() const {
        int n = 0;
        for (const auto& [c, basis] : cells) n += static_cast<int>(basis.size());
        return n;
    }

    Mat del_at(Bidegree c) const {
        auto it = del.find(c);
        if (it != del.end()) return it->second.dense();
        return Mat(dim({c.p + 1, c.q}), dim(c));
    }

    Mat delbar_at(Bidegree c) const {
        auto it = delbar.find(c);
        if (it != delbar.end()) return it->second.dense();
        return Mat(dim({c.p, c.q + 1}), dim(c));
    }

    /// Drops empty cells and zero matrices; the canonical storage form.
    void prune() {
        std::erase_if(cells, [](const auto& kv) { return kv.second.empty(); });
        auto dead = [](const auto& kv) { return kv.second.entries.empty(); };
        std::erase_if(del, dead);
        std::erase_if(delbar, dead);
    }

    struct BoundingBox {
        int pmin = 0, pmax = -1, qmin = 0, qmax = -1;
        bool empty() const { return pmax < pmin; }
    };

    BoundingBox bounding_box() const {
        BoundingBox bb;
        bool first = true;
        for (const auto& [c, basis] : cells) {
            if (basis.empty()) continue;
            if (first) {
                bb = {c.p, c.p, c.q, c.q};
                first = false;
            } else {
                bb.pmin = std::min(bb.pmin, c.p);
                bb.pmax = std::max(bb.pmax, c.p);
                bb.qmin = std::min(bb.qmin, c.q);
                bb.qmax = std::max(bb.qmax, c.q);
            }
        }
        return bb;
    }
};

struct Violation {
    enum class Kind { shape, del_del, delbar_delbar, anticommute };
    Kind kind;
    Bidegree at;  // source bidegree of the offending composition
    std::string detail;
};

inline std::string violation_text(const Violation& v) {
    std::string what;
    switch (v.kind) {
        case Violation::Kind::shape: what = "matrix shape mismatch"; break;
        case Violation::Kind::del_del: what = "del∘del != 0"; break;
        case Violation::Kind::delbar_delbar: what = "delbar∘delbar != 0"; break;
        case Violation::Kind::anticommute: what = "del∘delbar + delbar∘del != 0"; break;
    }
    return what + " at (" + std::to_string(v.at.p) + "," + std::to_string(v.at.q) + ")" +
           (v.detail.empty() ? "" : ": " + v.detail);
}

/// Empty iff the three composition identities hold everywhere and all stored
/// matrices have shapes consistent with the adjacent bases.
inline std::vector<Violation> validate(const Bicomplex& b) {
    std::vector<Violation> out;
    auto check_shape = [&](const std::map<Bidegree, SparseMat>& mats, Bidegree step) {
        for (const auto& [c, m] : mats) {
            if (m.cols != b.dim(c) || m.rows != b.dim(c + step))
                out.push_back({Violation::Kind::shape, c,
                               "stored " + std::to_string(m.rows) + "x" + std::to_string(m.cols)});
        }
    };
    check_shape(b.del, {1, 0});
    check_shape(b.delbar, {0, 1});
    if (!out.empty()) return out;  // composition checks assume consistent shapes

    for (const auto& [c, basis] : b.cells) {
        if (basis.empty()) continue;
        Bidegree up{c.p + 1, c.q}, right{c.p, c.q + 1};
        if (!(b.del_at(up) * b.del_at(c)).is_zero())
            out.push_back({Violation::Kind::del_del, c, ""});
        if (!(b.delbar_at(right) * b.delbar_at(c)).is_zero())
            out.push_back({Violation::Kind::delbar_delbar, c, ""});
        Mat anti = b.delbar_at(up) * b.del_at(c) + b.del_at(right) * b.delbar_at(c);
        if (!anti.is_zero()) out.push_back({Violation::Kind::anticommute, c, ""});
    }
    return out;
}

/// Mirror along the diagonal: swaps (p,q)<->(q,p), swaps the roles of ∂ and
/// ∂̄, conjugates entries. Labels are transformed by `conj_label` (identity
/// for raw complexes; the builder substitutes generator conjugation).
template <typename LabelFn>
Bicomplex conjugate(const Bicomplex& b, LabelFn&& conj_label) {
    Bicomplex out;
    for (const auto& [c, basis] : b.cells) {
        auto& target = out.cells[{c.q, c.p}];
        target.reserve(basis.size());
        for (const auto& l : basis) target.push_back(conj_label(l));
    }
    auto flip = [](const SparseMat& m) {
        SparseMat r(m.rows, m.cols);
        for (const auto& e : m.entries) r.add(e.row, e.col, conj(e.value));
        return r;
    };
    for (const auto& [c, m] : b.del) out.delbar[{c.q, c.p}] = flip(m);
    for (const auto& [c, m] : b.delbar) out.del[{c.q, c.p}] = flip(m);
    return out;
}

inline Bicomplex conjugate(const Bicomplex& b) {
    return conjugate(b, [](const std::string& l) { return l; });
}

/// Block-diagonal sum: bases concatenated per bidegree (a's first).
inline Bicomplex direct_sum(const Bicomplex& a, const Bicomplex& b) {
    Bicomplex out = a;
    for (const auto& [c, basis] : b.cells) {
        auto& target = out.cells[c];
        target.insert(target.end(), basis.begin(), basis.end());
    }
    // a's blocks keep offset 0, b's blocks sit at the end of each basis.
    auto merge = [&](std::map<Bidegree, SparseMat>& dst, const std::map<Bidegree, SparseMat>& src,
                     Bidegree step) {
        for (auto& [c, m] : dst) {
            m.rows = out.dim(c + step);
            m.cols = out.dim(c);
        }
        for (const auto& [c, m] : src) {
            auto& target = dst.try_emplace(c, SparseMat(out.dim(c + step), out.dim(c))).first->second;
            target.rows = out.dim(c + step);
            target.cols = out.dim(c);
            int roff = out.dim(c + step) - m.rows;
            int coff = out.dim(c) - m.cols;
            for (const auto& e : m.entries) target.add(e.row + roff, e.col + coff, e.value);
        }
    };
    merge(out.del, b.del, {1, 0});
    merge(out.delbar, b.delbar, {0, 1});
    out.prune();
    return out;
}

/// The standard complex C(S): one basis vector per cell, ±1 arrows. Squares
/// get the compensating -1 on the arrow (p+1,q)->(p+1,q+1) so that the
/// differentials anticommute; zigzag arrows are all +1.
inline Bicomplex shape_complex(const Shape& s, const std::string& label_prefix = "e") {
    Bicomplex out;
    for (std::size_t i = 0; i < s.cells.size(); ++i) {
        Bidegree c = s.cells[i];
        out.cells[c] = {label_prefix + "(" + std::to_string(c.p) + "," + std::to_string(c.q) + ")"};
    }
    auto arrow = [&](std::map<Bidegree, SparseMat>& mats, Bidegree from, long value) {
        SparseMat m(1, 1);
        m.add(0, 0, Gq(value));
        mats[from] = std::move(m);
    };
    if (s.kind == Shape::Kind::square) {
        Bidegree c = s.anchor();
        arrow(out.del, c, 1);                  // (p,q)   -> (p+1,q)
        arrow(out.delbar, c, 1);               // (p,q)   -> (p,q+1)
        arrow(out.del, {c.p, c.q + 1}, 1);     // (p,q+1) -> (p+1,q+1)
        arrow(out.delbar, {c.p + 1, c.q}, -1); // (p+1,q) -> (p+1,q+1)
        return out;
    }
    for (std::size_t i = 1; i < s.cells.size(); ++i) {
        Bidegree prev = s.cells[i - 1], cur = s.cells[i];
        if (cur.p == prev.p + 1)
            arrow(out.del, prev, 1);  // ∂: prev -> cur
        else
            arrow(out.delbar, cur, 1);  // ∂̄: cur -> prev (cur has the lower q)
    }
    return out;
}

}  // namespace solvcohom
