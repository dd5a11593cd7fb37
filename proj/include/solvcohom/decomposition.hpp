#pragma once

#include "solvcohom/cohomology.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace solvcohom {

struct DecompositionFailure : MathError {
    using MathError::MathError;
};

struct InternalInconsistency : MathError {
    using MathError::MathError;
};

struct DecompositionEntry {
    Shape shape;
    int mult = 0;
    friend bool operator==(const DecompositionEntry&, const DecompositionEntry&) = default;
};

/// Multiset of squares and zigzags with multiplicities; per-cell dimensions
/// are conserved by construction (decompose verifies before returning).
struct Decomposition {
    std::vector<DecompositionEntry> entries;

    void add(const Shape& s, int mult = 1) {
        if (mult == 0) return;
        for (auto& e : entries)
            if (e.shape == s) {
                e.mult += mult;
                return;
            }
        entries.push_back({s, mult});
    }

    void canonicalize() {
        std::erase_if(entries, [](const DecompositionEntry& e) { return e.mult == 0; });
        std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
            auto ka = std::tuple(a.shape.anchor(), a.shape.kind, a.shape.cells);
            auto kb = std::tuple(b.shape.anchor(), b.shape.kind, b.shape.cells);
            return ka < kb;
        });
    }

    int dim_at(Bidegree c) const {
        int n = 0;
        for (const auto& e : entries)
            if (e.shape.contains(c)) n += e.mult;
        return n;
    }

    friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// Corner counting: a zigzag contributes to a flavor at each of its
/// cells lacking the flavor's neighbour cells; squares contribute nothing.
inline int cohomology_counts(const Decomposition& d, Flavor f, int p, int q) {
    Bidegree c{p, q};
    int n = 0;
    for (const auto& e : d.entries) {
        if (e.shape.kind == Shape::Kind::square || !e.shape.contains(c)) continue;
        bool counted = false;
        switch (f) {
            case Flavor::conj_dolbeault:
                counted = !e.shape.contains({p - 1, q}) && !e.shape.contains({p + 1, q});
                break;
            case Flavor::dolbeault:
                counted = !e.shape.contains({p, q - 1}) && !e.shape.contains({p, q + 1});
                break;
            case Flavor::bott_chern:
                counted = !e.shape.contains({p + 1, q}) && !e.shape.contains({p, q + 1});
                break;
            case Flavor::aeppli:
                counted = !e.shape.contains({p - 1, q}) && !e.shape.contains({p, q - 1});
                break;
        }
        if (counted) n += e.mult;
    }
    return n;
}

namespace detail {

/// Mutable dense copy of a bicomplex used while splitting off summands.
struct Work {
    std::map<Bidegree, int> dims;
    std::map<Bidegree, Mat> del, delbar;

    explicit Work(const Bicomplex& b) {
        for (const auto& [c, basis] : b.cells)
            if (!basis.empty()) dims[c] = static_cast<int>(basis.size());
        for (const auto& [c, m] : b.del)
            if (!m.entries.empty()) del[c] = m.dense();
        for (const auto& [c, m] : b.delbar)
            if (!m.entries.empty()) delbar[c] = m.dense();
    }

    int dim(Bidegree c) const {
        auto it = dims.find(c);
        return it == dims.end() ? 0 : it->second;
    }

    Mat get(const std::map<Bidegree, Mat>& mats, Bidegree c, Bidegree step) const {
        auto it = mats.find(c);
        if (it != mats.end()) return it->second;
        return Mat(dim(c + step), dim(c));
    }
    Mat del_at(Bidegree c) const { return get(del, c, {1, 0}); }
    Mat delbar_at(Bidegree c) const { return get(delbar, c, {0, 1}); }
};

/// Splits off one square anchored at c: builds the idempotent bicomplex
/// endomorphism P with image the square through basis vector j, restricts
/// everything to ker P. Each of the four cells drops exactly one dimension.
inline void split_square(Work& w, Bidegree c, int col, const Mat& ddb, int row) {
    Bidegree cu{c.p + 1, c.q}, cr{c.p, c.q + 1}, cd{c.p + 1, c.q + 1};
    Gq wr = ddb.at(row, col);

    Mat x(w.dim(cu), 1), y(w.dim(cr), 1), wvec(w.dim(cd), 1);
    {
        Mat d0 = w.del_at(c), b0 = w.delbar_at(c);
        for (int i = 0; i < x.rows; ++i) x.at(i, 0) = d0.at(i, col);
        for (int i = 0; i < y.rows; ++i) y.at(i, 0) = b0.at(i, col);
        for (int i = 0; i < wvec.rows; ++i) wvec.at(i, 0) = ddb.at(i, col);
    }

    auto outer = [&](const Mat& colv, const Mat& rowsrc, int r, bool negate) {
        Mat P(colv.rows, rowsrc.cols);
        for (int i = 0; i < P.rows; ++i) {
            if (colv.at(i, 0).is_zero()) continue;
            Gq scale = colv.at(i, 0) / wr;
            if (negate) scale = -scale;
            for (int k = 0; k < P.cols; ++k) P.at(i, k) = scale * rowsrc.at(r, k);
        }
        return P;
    };

    std::map<Bidegree, Mat> basis;  // new basis columns per affected cell
    {
        Mat v(w.dim(c), 1);
        v.at(col, 0) = Gq(1);
        Mat Pc = outer(v, ddb, row, false);
        Mat Pu = outer(x, w.delbar_at(cu), row, true);
        Mat Pr = outer(y, w.del_at(cr), row, false);
        Mat ident(w.dim(cd), w.dim(cd));
        for (int k = 0; k < w.dim(cd); ++k) ident.at(row, k) = Gq(k == row ? 1 : 0);
        Mat Pd = outer(wvec, ident, row, false);
        for (auto& [cell, P] : std::map<Bidegree, Mat>{{c, Pc}, {cu, Pu}, {cr, Pr}, {cd, Pd}}) {
            Mat N = kernel_basis(P);
            if (N.cols != w.dim(cell) - 1)
                throw InternalInconsistency("square projector rank is not 1");
            basis[cell] = std::move(N);
        }
    }

    auto rewrite = [&](std::map<Bidegree, Mat>& mats, Bidegree step) {
        std::vector<Bidegree> keys;
        for (const auto& [s, m] : mats) keys.push_back(s);
        for (Bidegree s : keys) {
            Bidegree t = s + step;
            bool sa = basis.count(s), ta = basis.count(t);
            if (!sa && !ta) continue;
            Mat m = mats.at(s);
            if (sa) m = m * basis.at(s);
            if (ta) m = solve_matrix(basis.at(t), m);
            if (m.is_zero())
                mats.erase(s);
            else
                mats[s] = std::move(m);
        }
    };
    rewrite(w.del, {1, 0});
    rewrite(w.delbar, {0, 1});
    for (const auto& [cell, N] : basis) w.dims[cell] -= 1;
}

/// Linear relation R ⊆ U ⊕ V stored as a column span; `rank` counts the
/// classes that genuinely couple U to V (graph of an iso: full rank).
struct Relation {
    int dim_u = 0, dim_v = 0;
    Mat span;  // (dim_u + dim_v) rows

    static Relation diagonal(int n) {
        Relation r{n, n, Mat(2 * n, n)};
        for (int i = 0; i < n; ++i) {
            r.span.at(i, i) = Gq(1);
            r.span.at(n + i, i) = Gq(1);
        }
        return r;
    }

    static Relation forward_graph(const Mat& f) {  // {(x, fx)}
        Relation r{f.cols, f.rows, {}};
        r.span = vstack(Mat::identity(f.cols), f);
        return r;
    }

    static Relation backward_graph(const Mat& g) {  // {(gy, y)}
        Relation r{g.rows, g.cols, {}};
        r.span = vstack(g, Mat::identity(g.cols));
        return r;
    }

    Mat part(bool lower) const {
        Mat m(lower ? dim_v : dim_u, span.cols);
        int off = lower ? dim_u : 0;
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) m.at(i, j) = span.at(off + i, j);
        return m;
    }

    int rank() const {
        int total = solvcohom::rank(span);
        auto axis = [&](bool lower) {
            Mat inc(dim_u + dim_v, lower ? dim_v : dim_u);
            int off = lower ? dim_u : 0;
            for (int j = 0; j < inc.cols; ++j) inc.at(off + j, j) = Gq(1);
            return total + inc.cols - solvcohom::rank(hstack(span, inc));
        };
        return total - axis(false) - axis(true);
    }
};

inline Relation compose(const Relation& r, const Relation& e) {
    if (r.dim_v != e.dim_u) throw MathError("relation composition mismatch");
    Mat rb = r.part(true), et = e.part(false);
    Mat match = hstack(rb, -et);
    Mat K = kernel_basis(match);
    Mat kr(r.span.cols, K.cols), ke(e.span.cols, K.cols);
    for (int j = 0; j < K.cols; ++j) {
        for (int i = 0; i < kr.rows; ++i) kr.at(i, j) = K.at(i, j);
        for (int i = 0; i < ke.rows; ++i) ke.at(i, j) = K.at(kr.rows + i, j);
    }
    Relation out{r.dim_u, e.dim_v, {}};
    out.span = vstack(r.part(false) * kr, e.part(true) * ke);
    return out;
}

}  // namespace detail

/// Unique decomposition into squares and zigzags with multiplicities. Squares are
/// split off by explicit projectors while ∂∂̄ ≠ 0; the residual complex has
/// all compositions zero, so every indecomposable spans two adjacent
/// antidiagonals and falls out of an A-type interval computation per
/// antidiagonal pair. Dots are counted directly. The result is verified
/// against per-cell dimensions and all four cohomologies before returning.
inline Decomposition decompose(const Bicomplex& b) {
    for (const auto& v : validate(b))
        throw DecompositionFailure("invalid bicomplex: " + violation_text(v));

    detail::Work w(b);
    Decomposition out;

    // squares
    for (bool progress = true; progress;) {
        progress = false;
        for (const auto& [c, d] : w.dims) {
            if (d == 0) continue;
            Mat ddb = w.del_at({c.p, c.q + 1}) * w.delbar_at(c);
            for (int col = 0; col < ddb.cols && !progress; ++col)
                for (int row = 0; row < ddb.rows && !progress; ++row)
                    if (!ddb.at(row, col).is_zero()) {
                        detail::split_square(w, c, col, ddb, row);
                        out.add(Shape::square(c.p, c.q));
                        progress = true;
                    }
            if (progress) break;
        }
    }

    // dots: kernel of both outgoing arrows modulo both incoming images
    for (const auto& [c, d] : w.dims) {
        if (d == 0) continue;
        Mat ker = kernel_basis(vstack(w.del_at(c), w.delbar_at(c)));
        Mat in = hstack(w.get(w.del, {c.p - 1, c.q}, {1, 0}),
                        w.get(w.delbar, {c.p, c.q - 1}, {0, 1}));
        int dots = rank(ker) - rank(in);
        if (dots < 0) throw DecompositionFailure("negative dot count");
        out.add(Shape::dot(c.p, c.q), dots);
    }

    // zigzags of length >= 2, one antidiagonal pair at a time
    auto bb_cells = [&] {
        std::vector<Bidegree> cells;
        for (const auto& [c, d] : w.dims)
            if (d > 0) cells.push_back(c);
        return cells;
    }();
    if (!bb_cells.empty()) {
        int kmin = bb_cells.front().p + bb_cells.front().q, kmax = kmin;
        for (auto c : bb_cells) {
            kmin = std::min(kmin, c.p + c.q);
            kmax = std::max(kmax, c.p + c.q);
        }
        for (int k = kmin; k < kmax; ++k) {
            // fence nodes: W_(p) = (p, k+1-p) at position 2p, V_(p) = (p, k-p)
            // at 2p+1; edges V_(p) -> W_(p) via delbar, V_(p) -> W_(p+1) via del.
            int pmin = 0, pmax = -1;
            bool any = false;
            for (auto c : bb_cells) {
                if (c.p + c.q != k && c.p + c.q != k + 1) continue;
                if (!any) {
                    pmin = pmax = c.p;
                    any = true;
                } else {
                    pmin = std::min(pmin, c.p);
                    pmax = std::max(pmax, c.p);
                }
            }
            if (!any) continue;
            std::vector<Bidegree> node;  // positions pmin*2 .. pmax*2+2 shifted to 0-based
            for (int p = pmin; p <= pmax + 1; ++p) {
                node.push_back({p, k + 1 - p});  // W_(p)
                node.push_back({p, k - p});      // V_(p)
            }
            node.pop_back();  // no V_(pmax+1)
            int N = static_cast<int>(node.size());
            auto edge = [&](int t) {  // relation U_t ⊕ U_{t+1}
                // even t: W_(p), V_(p) with map delbar: V -> W (backward)
                // odd t: V_(p), W_(p+1) with map del: V -> W (forward)
                Bidegree vcell = t % 2 == 0 ? node[t + 1] : node[t];
                if (t % 2 == 0) return detail::Relation::backward_graph(w.delbar_at(vcell));
                return detail::Relation::forward_graph(w.del_at(vcell));
            };
            // rho[b][d] = rank of the composed relation across positions b..d
            std::vector<std::vector<int>> rho(N, std::vector<int>(N, 0));
            for (int bpos = 0; bpos < N; ++bpos) {
                detail::Relation r = detail::Relation::diagonal(w.dim(node[bpos]));
                rho[bpos][bpos] = r.rank();
                for (int dpos = bpos + 1; dpos < N; ++dpos) {
                    r = detail::compose(r, edge(dpos - 1));
                    rho[bpos][dpos] = r.rank();
                }
            }
            auto rho_at = [&](int bpos, int dpos) {
                if (bpos < 0 || dpos >= N) return 0;
                return rho[bpos][dpos];
            };
            for (int bpos = 0; bpos < N; ++bpos)
                for (int dpos = bpos + 1; dpos < N; ++dpos) {
                    int mult = rho_at(bpos, dpos) - rho_at(bpos - 1, dpos) -
                               rho_at(bpos, dpos + 1) + rho_at(bpos - 1, dpos + 1);
                    if (mult < 0) throw DecompositionFailure("negative zigzag multiplicity");
                    if (mult == 0) continue;
                    std::vector<Bidegree> cells(node.begin() + bpos, node.begin() + dpos + 1);
                    out.add(Shape::zigzag(std::move(cells)), mult);
                }
        }
    }

    out.canonicalize();

    // verification gate: dimension conservation and cohomology roundtrip
    auto bb = b.bounding_box();
    for (int p = bb.pmin; p <= bb.pmax; ++p)
        for (int q = bb.qmin; q <= bb.qmax; ++q)
            if (out.dim_at({p, q}) != b.dim({p, q}))
                throw DecompositionFailure("dimension mismatch at (" + std::to_string(p) + "," +
                                           std::to_string(q) + ")");
    for (Flavor f : {Flavor::dolbeault, Flavor::conj_dolbeault, Flavor::bott_chern, Flavor::aeppli})
        for (int p = bb.pmin; p <= bb.pmax; ++p)
            for (int q = bb.qmin; q <= bb.qmax; ++q)
                if (cohomology_counts(out, f, p, q) != cohomology_dim(b, f, p, q))
                    throw DecompositionFailure("cohomology mismatch (" + flavor_name(f) + ") at (" +
                                               std::to_string(p) + "," + std::to_string(q) + ")");
    return out;
}

struct Page1Report {
    bool dots_and_len2_only = false;
    bool has_squares = false;
};

inline Page1Report page1_check(const Decomposition& d) {
    Page1Report r;
    r.dots_and_len2_only = true;
    for (const auto& e : d.entries) {
        if (e.shape.kind == Shape::Kind::square)
            r.has_squares = true;
        else if (e.shape.length() > 2)
            r.dots_and_len2_only = false;
    }
    return r;
}

inline Page1Report page1_check(const Bicomplex& b) { return page1_check(decompose(b)); }

struct DdbarVerdict {
    bool holds = false;
    std::string witness;  // offending shape when the lemma fails
};

/// ∂∂̄-lemma via the decomposition (dots and squares only), cross-checked
/// against dimension equality of all four flavors. Disagreement between the
/// two routes is a bug, never an expected outcome.
inline DdbarVerdict ddbar_lemma(const Bicomplex& b) {
    Decomposition d = decompose(b);
    DdbarVerdict v;
    v.holds = true;
    for (const auto& e : d.entries)
        if (e.shape.kind == Shape::Kind::zigzag && e.shape.length() > 1) {
            v.holds = false;
            v.witness = e.shape.name();
            break;
        }
    bool dims_equal = true;
    auto bb = b.bounding_box();
    for (int p = bb.pmin; p <= bb.pmax && dims_equal; ++p)
        for (int q = bb.qmin; q <= bb.qmax && dims_equal; ++q) {
            int h = cohomology_dim(b, Flavor::dolbeault, p, q);
            dims_equal = cohomology_dim(b, Flavor::conj_dolbeault, p, q) == h &&
                         cohomology_dim(b, Flavor::bott_chern, p, q) == h &&
                         cohomology_dim(b, Flavor::aeppli, p, q) == h;
        }
    if (dims_equal != v.holds)
        throw InternalInconsistency("ddbar-lemma: decomposition and dimension routes disagree");
    return v;
}

// --- rendering ---------------------------------------------------------------

/// Grouped listing: dots, then lines, then anything longer.
inline std::string describe(const Decomposition& d) {
    std::ostringstream os;
    auto emit = [&](const char* header, auto pred) {
        std::string line;
        for (const auto& e : d.entries) {
            if (!pred(e.shape)) continue;
            if (!line.empty()) line += " + ";
            line += e.shape.name();
            if (e.mult > 1) line += "x" + std::to_string(e.mult);
        }
        os << header << (line.empty() ? "none" : line) << "\n";
    };
    emit("dots:             ", [](const Shape& s) { return s.kind == Shape::Kind::zigzag && s.length() == 1; });
    emit("horizontal lines: ", [](const Shape& s) {
        return s.kind == Shape::Kind::zigzag && s.length() == 2 && s.cells[0].p != s.cells[1].p;
    });
    emit("vertical lines:   ", [](const Shape& s) {
        return s.kind == Shape::Kind::zigzag && s.length() == 2 && s.cells[0].p == s.cells[1].p;
    });
    emit("longer zigzags:   ", [](const Shape& s) { return s.kind == Shape::Kind::zigzag && s.length() > 2; });
    emit("squares:          ", [](const Shape& s) { return s.kind == Shape::Kind::square; });
    return os.str();
}

/// Grid with p increasing to the right and q increasing upward, so an S_h
/// line renders as "C -> C" and an S_v line as a vertical arrow.
inline std::string render_ascii(const Decomposition& d, Bicomplex::BoundingBox bb) {
    if (bb.empty()) return "(empty)\n";
    const int cw = 6, aw = 4;
    // arrow multiplicities between adjacent cells
    std::map<std::pair<Bidegree, bool>, int> arrows;  // (from, is_del) -> count
    for (const auto& e : d.entries) {
        if (e.shape.kind == Shape::Kind::square) {
            Bidegree a = e.shape.anchor();
            arrows[{{a.p, a.q}, true}] += e.mult;
            arrows[{{a.p, a.q + 1}, true}] += e.mult;
            arrows[{{a.p, a.q}, false}] += e.mult;
            arrows[{{a.p + 1, a.q}, false}] += e.mult;
            continue;
        }
        for (std::size_t i = 1; i < e.shape.cells.size(); ++i) {
            Bidegree prev = e.shape.cells[i - 1], cur = e.shape.cells[i];
            if (cur.p == prev.p + 1)
                arrows[{prev, true}] += e.mult;  // del arrow prev -> cur
            else
                arrows[{cur, false}] += e.mult;  // delbar arrow cur -> prev
        }
    }
    auto pad = [](std::string s, int width) {
        s.resize(static_cast<std::size_t>(width), ' ');
        return s;
    };
    std::ostringstream os;
    for (int q = bb.qmax; q >= bb.qmin; --q) {
        if (q < bb.qmax) {
            os << pad("", 5);
            for (int p = bb.pmin; p <= bb.pmax; ++p) {
                auto it = arrows.find({{p, q}, false});
                os << pad(it == arrows.end() ? "" : "^" + std::to_string(it->second), cw + aw);
            }
            os << "\n";
        }
        os << pad("q=" + std::to_string(q), 5);
        for (int p = bb.pmin; p <= bb.pmax; ++p) {
            int n = d.dim_at({p, q});
            std::string cell = n == 0 ? "." : (n == 1 ? "C" : "C^" + std::to_string(n));
            os << pad(cell, cw);
            auto it = arrows.find({{p, q}, true});
            std::string arrow;
            if (it != arrows.end())
                arrow = it->second == 1 ? "->" : "->" + std::to_string(it->second);
            os << pad(arrow, aw);
        }
        os << "\n";
    }
    os << pad("", 5);
    for (int p = bb.pmin; p <= bb.pmax; ++p) os << pad("p=" + std::to_string(p), cw + aw);
    os << "\n";
    return os.str();
}

inline std::string render_dot(const Decomposition& d) {
    std::ostringstream os;
    os << "digraph decomposition {\n  rankdir=BT;\n  node [shape=plaintext];\n";
    std::map<Bidegree, int> dims;
    for (const auto& e : d.entries)
        for (auto c : e.shape.cells) dims[c] = 0;
    for (auto& [c, n] : dims) n = d.dim_at(c);
    auto id = [](Bidegree c) {
        auto part = [](int v) { return (v < 0 ? "m" : "") + std::to_string(std::abs(v)); };
        return "c" + part(c.p) + "_" + part(c.q);
    };
    for (const auto& [c, n] : dims)
        os << "  " << id(c) << " [label=\"(" << c.p << "," << c.q << ") C^" << n << "\"];\n";
    for (const auto& e : d.entries) {
        std::vector<std::pair<Bidegree, Bidegree>> segs;
        if (e.shape.kind == Shape::Kind::square) {
            Bidegree a = e.shape.anchor();
            segs = {{a, {a.p + 1, a.q}},
                    {a, {a.p, a.q + 1}},
                    {{a.p, a.q + 1}, {a.p + 1, a.q + 1}},
                    {{a.p + 1, a.q}, {a.p + 1, a.q + 1}}};
        } else {
            for (std::size_t i = 1; i < e.shape.cells.size(); ++i) {
                Bidegree prev = e.shape.cells[i - 1], cur = e.shape.cells[i];
                segs.push_back(cur.p == prev.p + 1 ? std::pair(prev, cur) : std::pair(cur, prev));
            }
        }
        for (auto& [from, to] : segs)
            os << "  " << id(from) << " -> " << id(to) << " [label=\"" << e.mult << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace solvcohom
