#pragma once

// Shared helpers for the test suites: seeded random scalars, random shape
// sums with basis scrambling (the decomposition oracle), and tiny utilities.

#include "solvcohom/bicomplex.hpp"
#include "solvcohom/decomposition.hpp"

#include <random>
#include <vector>

namespace testsupport {

using namespace solvcohom;

using Rng = std::mt19937;

inline Gq random_gq(Rng& rng, int span = 6, bool allow_zero = true) {
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, 3);
    Gq g(ratio(num(rng), den(rng)), ratio(num(rng), den(rng)));
    if (!allow_zero && g.is_zero()) return Gq(1);
    return g;
}

inline std::vector<Gq> random_vector(Rng& rng, int n) {
    std::vector<Gq> v(n);
    for (auto& x : v) x = random_gq(rng);
    return v;
}

/// Random multiset of shapes on a small grid; weights pick dots and lines
/// most often, squares sometimes, and zigzags of length 3 occasionally.
inline std::vector<Shape> random_shapes(Rng& rng, int max_shapes = 6, int grid = 3,
                                        bool with_squares = true, bool with_long = true) {
    std::uniform_int_distribution<int> coord(0, grid);
    std::uniform_int_distribution<int> count(1, max_shapes);
    std::uniform_int_distribution<int> kind(0, 99);
    std::vector<Shape> shapes;
    int n = count(rng);
    for (int i = 0; i < n; ++i) {
        int p = coord(rng), q = coord(rng);
        int k = kind(rng);
        if (k < 40) {
            shapes.push_back(Shape::dot(p, q));
        } else if (k < 60) {
            shapes.push_back(Shape::hline(p, q));
        } else if (k < 80) {
            shapes.push_back(Shape::vline(p, q));
        } else if (k < 90 && with_squares) {
            shapes.push_back(Shape::square(p, q));
        } else if (k < 96 && with_long) {
            // length-3 staircases in both orientations
            if (k % 2 == 0)
                shapes.push_back(Shape::zigzag({{p, q + 1}, {p, q}, {p + 1, q}}));
            else
                shapes.push_back(Shape::zigzag({{p, q + 1}, {p + 1, q + 1}, {p + 1, q}}));
        } else if (with_long) {
            std::vector<Bidegree> cells = {{p, q + 1}, {p, q}, {p + 1, q}, {p + 1, q - 1}};
            if (k % 2 == 0) cells.push_back({p + 2, q - 1});
            shapes.push_back(Shape::zigzag(std::move(cells)));
        } else {
            shapes.push_back(Shape::dot(p, q));
        }
    }
    return shapes;
}

inline Bicomplex sum_of_shapes(const std::vector<Shape>& shapes) {
    Bicomplex b;
    for (const auto& s : shapes) b = direct_sum(b, shape_complex(s));
    return b;
}

inline Decomposition as_decomposition(const std::vector<Shape>& shapes) {
    Decomposition d;
    for (const auto& s : shapes) d.add(s);
    d.canonicalize();
    return d;
}

/// Random invertible matrix over Q(i) with small integer entries.
inline Mat random_invertible(Rng& rng, int n) {
    if (n == 0) return Mat(0, 0);
    std::uniform_int_distribution<int> entry(-2, 2);
    for (;;) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = Gq(entry(rng), entry(rng));
        if (rank(m) == n) return m;
    }
}

/// Conjugates all differentials by random bidegree-preserving isomorphisms.
inline Bicomplex scramble_basis(Rng& rng, const Bicomplex& b) {
    std::map<Bidegree, Mat> change, inverse;
    for (const auto& [c, basis] : b.cells) {
        Mat m = random_invertible(rng, static_cast<int>(basis.size()));
        change[c] = m;
        inverse[c] = solve_matrix(m, Mat::identity(m.rows));
    }
    Bicomplex out = b;
    auto rewrite = [&](std::map<Bidegree, SparseMat>& mats, Bidegree step) {
        for (auto& [c, m] : mats) {
            Mat dense = m.dense();
            if (change.count(c)) dense = dense * inverse.at(c);
            if (change.count(c + step)) dense = change.at(c + step) * dense;
            m = SparseMat::from_dense(dense);
        }
    };
    rewrite(out.del, {1, 0});
    rewrite(out.delbar, {0, 1});
    return out;
}

}  // namespace testsupport
