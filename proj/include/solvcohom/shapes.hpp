#pragma once

#include "solvcohom/rational.hpp"

#include <algorithm>
#include <compare>
#include <string>
#include <vector>

namespace solvcohom {

struct Bidegree {
    int p = 0;
    int q = 0;
    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

inline Bidegree operator+(Bidegree a, Bidegree b) { return {a.p + b.p, a.q + b.q}; }

struct MalformedShape : MathError {
    using MathError::MathError;
};

/// Support of an indecomposable bicomplex: a 2x2 square or a staircase
/// zigzag (dots and length-2 lines are the shortest zigzags).
struct Shape {
    enum class Kind { square, zigzag };
    Kind kind = Kind::zigzag;
    std::vector<Bidegree> cells;  // canonical order, see canonicalize()

    friend auto operator<=>(const Shape&, const Shape&) = default;

    static Shape dot(int p, int q) { return zigzag({{p, q}}); }
    /// Horizontal line S_h^{p,q}: cells {(p,q),(p+1,q)}, one ∂ arrow.
    static Shape hline(int p, int q) { return zigzag({{p, q}, {p + 1, q}}); }
    /// Vertical line S_v^{p,q}: cells {(p,q),(p,q+1)}, one ∂̄ arrow.
    static Shape vline(int p, int q) { return zigzag({{p, q}, {p, q + 1}}); }

    static Shape square(int p, int q) {
        Shape s;
        s.kind = Kind::square;
        s.cells = {{p, q}, {p, q + 1}, {p + 1, q}, {p + 1, q + 1}};
        return s;
    }

    static Shape zigzag(std::vector<Bidegree> cells) {
        Shape s;
        s.kind = Kind::zigzag;
        s.cells = std::move(cells);
        s.canonicalize();
        return s;
    }

    /// Zigzag cells in staircase order: ascending p, descending q. The valid
    /// staircases step by (+1,0) or (0,-1), strictly alternating.
    void canonicalize() {
        if (kind == Kind::square) {
            if (cells.size() != 4) throw MalformedShape("square needs 4 cells");
            std::sort(cells.begin(), cells.end());
            Bidegree c = cells[0];
            std::vector<Bidegree> expect = {c, {c.p, c.q + 1}, {c.p + 1, c.q}, {c.p + 1, c.q + 1}};
            if (cells != expect) throw MalformedShape("square cells not a 2x2 block");
            return;
        }
        if (cells.empty()) throw MalformedShape("empty shape");
        std::sort(cells.begin(), cells.end(), [](Bidegree a, Bidegree b) {
            return a.p != b.p ? a.p < b.p : a.q > b.q;
        });
        if (std::adjacent_find(cells.begin(), cells.end()) != cells.end())
            throw MalformedShape("repeated cell in shape");
        int prev_step = 0;  // +1: p-step, -1: q-step
        for (std::size_t i = 1; i < cells.size(); ++i) {
            int dp = cells[i].p - cells[i - 1].p;
            int dq = cells[i].q - cells[i - 1].q;
            int step;
            if (dp == 1 && dq == 0)
                step = 1;
            else if (dp == 0 && dq == -1)
                step = -1;
            else
                throw MalformedShape("zigzag cells not a staircase");
            if (step == prev_step) throw MalformedShape("zigzag steps must alternate");
            prev_step = step;
        }
    }

    int length() const { return static_cast<int>(cells.size()); }

    bool contains(Bidegree c) const {
        return std::find(cells.begin(), cells.end(), c) != cells.end();
    }

    Bidegree anchor() const {
        Bidegree a = cells.front();
        for (const auto& c : cells) a = std::min(a, c);
        return a;
    }

    /// Paper names for the small shapes: D^{p,q}, S_h^{p,q}, S_v^{p,q}.
    std::string name() const {
        Bidegree a = anchor();
        std::string at = "^{" + std::to_string(a.p) + "," + std::to_string(a.q) + "}";
        if (kind == Kind::square) return "sq" + at;
        if (length() == 1) return "D" + at;
        if (length() == 2) return (cells[0].p != cells[1].p ? "S_h" : "S_v") + at;
        std::string out = "Z{";
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ";";
            out += "(" + std::to_string(cells[i].p) + "," + std::to_string(cells[i].q) + ")";
        }
        return out + "}";
    }
};

}  // namespace solvcohom
