#pragma once

#include "solvcohom/gaussian.hpp"

#include <cassert>
#include <optional>
#include <vector>

namespace solvcohom {

/// Dense column-major-ish matrix over Q(i). Everything downstream is small
/// (a few dozen rows), so plain Gaussian elimination is exact and fast.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<Gq> a;  // row-major

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    Gq& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const Gq& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Gq(1);
        return m;
    }

    bool is_zero() const {
        for (const auto& x : a)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Mat&, const Mat&) = default;
};

inline Mat operator*(const Mat& A, const Mat& B) {
    assert(A.cols == B.rows);
    Mat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const Gq& aik = A.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < B.cols; ++j) {
                if (B.at(k, j).is_zero()) continue;
                C.at(i, j) += aik * B.at(k, j);
            }
        }
    return C;
}

inline Mat operator+(const Mat& A, const Mat& B) {
    assert(A.rows == B.rows && A.cols == B.cols);
    Mat C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] += B.a[i];
    return C;
}

inline Mat operator-(const Mat& A) {
    Mat C = A;
    for (auto& x : C.a) x = -x;
    return C;
}

inline Mat hstack(const Mat& A, const Mat& B) {
    assert(A.rows == B.rows);
    Mat C(A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
    }
    return C;
}

inline Mat vstack(const Mat& A, const Mat& B) {
    assert(A.cols == B.cols);
    Mat C(A.rows + B.rows, A.cols);
    for (int j = 0; j < A.cols; ++j) {
        for (int i = 0; i < A.rows; ++i) C.at(i, j) = A.at(i, j);
        for (int i = 0; i < B.rows; ++i) C.at(A.rows + i, j) = B.at(i, j);
    }
    return C;
}

inline Mat columns(const Mat& A, const std::vector<int>& idx) {
    Mat C(A.rows, static_cast<int>(idx.size()));
    for (int j = 0; j < C.cols; ++j)
        for (int i = 0; i < A.rows; ++i) C.at(i, j) = A.at(i, idx[j]);
    return C;
}

inline Mat column_vector(const std::vector<Gq>& v) {
    Mat C(static_cast<int>(v.size()), 1);
    for (std::size_t i = 0; i < v.size(); ++i) C.at(static_cast<int>(i), 0) = v[i];
    return C;
}

struct Rref {
    Mat m;
    std::vector<int> pivot_cols;
};

/// Reduced row echelon form; deterministic (first nonzero pivot per column,
/// columns scanned left to right).
inline Rref rref(Mat m) {
    Rref out;
    int lead = 0;
    for (int c = 0; c < m.cols && lead < m.rows; ++c) {
        int piv = -1;
        for (int r = lead; r < m.rows; ++r)
            if (!m.at(r, c).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != lead)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(lead, j));
        Gq scale = inv(m.at(lead, c));
        for (int j = 0; j < m.cols; ++j) m.at(lead, j) *= scale;
        for (int r = 0; r < m.rows; ++r) {
            if (r == lead || m.at(r, c).is_zero()) continue;
            Gq factor = m.at(r, c);
            for (int j = 0; j < m.cols; ++j) m.at(r, j) -= factor * m.at(lead, j);
        }
        out.pivot_cols.push_back(c);
        ++lead;
    }
    out.m = std::move(m);
    return out;
}

inline int rank(const Mat& m) { return static_cast<int>(rref(m).pivot_cols.size()); }

/// Columns spanning ker(m); free variables set to unit values in column order.
inline Mat kernel_basis(const Mat& m) {
    Rref r = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : r.pivot_cols) is_pivot[c] = true;
    int k = m.cols - static_cast<int>(r.pivot_cols.size());
    Mat out(m.cols, k);
    int col = 0;
    for (int free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        out.at(free, col) = Gq(1);
        for (std::size_t pi = 0; pi < r.pivot_cols.size(); ++pi)
            out.at(r.pivot_cols[pi], col) = -r.m.at(static_cast<int>(pi), free);
        ++col;
    }
    return out;
}

/// One solution x of Ax = b (free variables zero), or nullopt if inconsistent.
inline std::optional<std::vector<Gq>> solve(const Mat& A, const std::vector<Gq>& b) {
    assert(static_cast<int>(b.size()) == A.rows);
    Rref r = rref(hstack(A, column_vector(b)));
    std::vector<Gq> x(A.cols);
    for (std::size_t pi = 0; pi < r.pivot_cols.size(); ++pi) {
        if (r.pivot_cols[pi] == A.cols) return std::nullopt;  // pivot in the b column
        x[r.pivot_cols[pi]] = r.m.at(static_cast<int>(pi), A.cols);
    }
    return x;
}

/// Solve AX = B columnwise; throws if any column is inconsistent.
inline Mat solve_matrix(const Mat& A, const Mat& B) {
    assert(A.rows == B.rows);
    Mat X(A.cols, B.cols);
    Rref r = rref(hstack(A, B));
    for (std::size_t pi = 0; pi < r.pivot_cols.size(); ++pi) {
        int pc = r.pivot_cols[pi];
        if (pc >= A.cols) throw MathError("solve_matrix: inconsistent system");
        for (int j = 0; j < B.cols; ++j) X.at(pc, j) = r.m.at(static_cast<int>(pi), A.cols + j);
    }
    return X;
}

/// Columns of `candidates` that enlarge span(base); together with base they
/// span base+candidates. Deterministic in column order.
inline std::vector<int> extending_columns(const Mat& base, const Mat& candidates) {
    assert(base.rows == candidates.rows || base.cols == 0);
    Mat joint = base.cols == 0 ? candidates : hstack(base, candidates);
    Rref r = rref(joint);
    std::vector<int> picked;
    for (int c : r.pivot_cols)
        if (c >= base.cols) picked.push_back(c - base.cols);
    return picked;
}

inline bool in_span(const Mat& span_cols, const std::vector<Gq>& v) {
    return solve(span_cols, v).has_value();
}

/// Factors A once so that many right-hand sides can be solved by a single
/// matrix-vector product. Produces the same particular solutions as solve().
class PreparedSolver {
  public:
    PreparedSolver() = default;
    explicit PreparedSolver(const Mat& A) : cols_(A.cols) {
        Rref r = rref(hstack(A, Mat::identity(A.rows)));
        for (int c : r.pivot_cols)
            if (c < A.cols) pivot_cols_.push_back(c);
        arank_ = static_cast<int>(pivot_cols_.size());
        trans_ = Mat(A.rows, A.rows);
        for (int i = 0; i < A.rows; ++i)
            for (int j = 0; j < A.rows; ++j) trans_.at(i, j) = r.m.at(i, A.cols + j);
    }

    int rank() const { return arank_; }
    int rows() const { return trans_.rows; }

    /// trans * b; the first rank() entries are the pivot values, the rest is
    /// the residual that must vanish for b to lie in the column space.
    std::vector<Gq> reduce(const std::vector<Gq>& b) const {
        std::vector<Gq> out(trans_.rows);
        for (int i = 0; i < trans_.rows; ++i)
            for (int j = 0; j < trans_.cols; ++j)
                if (!trans_.at(i, j).is_zero() && !b[j].is_zero())
                    out[i] += trans_.at(i, j) * b[j];
        return out;
    }

    bool residual_zero(const std::vector<Gq>& reduced) const {
        for (int i = arank_; i < static_cast<int>(reduced.size()); ++i)
            if (!reduced[i].is_zero()) return false;
        return true;
    }

    bool in_image(const std::vector<Gq>& b) const { return residual_zero(reduce(b)); }

    std::optional<std::vector<Gq>> solve(const std::vector<Gq>& b) const {
        std::vector<Gq> red = reduce(b);
        if (!residual_zero(red)) return std::nullopt;
        std::vector<Gq> x(cols_);
        for (int i = 0; i < arank_; ++i) x[pivot_cols_[i]] = red[i];
        return x;
    }

  private:
    int cols_ = 0;
    int arank_ = 0;
    std::vector<int> pivot_cols_;
    Mat trans_;
};

/// dim(span(A) ∩ span(B)) = rk A + rk B - rk [A|B].
inline int intersection_dim(const Mat& A, const Mat& B) {
    if (A.cols == 0 || B.cols == 0) return 0;
    return rank(A) + rank(B) - rank(hstack(A, B));
}

// --- sparse triplets -------------------------------------------------------

struct SparseEntry {
    int row = 0;
    int col = 0;
    Gq value;
    friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Triplet-format sparse matrix; the storage format for bicomplex
/// differentials (and their JSON form). Rank work densifies first.
struct SparseMat {
    int rows = 0;
    int cols = 0;
    std::vector<SparseEntry> entries;

    SparseMat() = default;
    SparseMat(int r, int c) : rows(r), cols(c) {}

    friend bool operator==(const SparseMat&, const SparseMat&) = default;

    void add(int r, int c, Gq v) {
        assert(r >= 0 && r < rows && c >= 0 && c < cols);
        if (!v.is_zero()) entries.push_back({r, c, std::move(v)});
    }

    Mat dense() const {
        Mat m(rows, cols);
        for (const auto& e : entries) m.at(e.row, e.col) += e.value;
        return m;
    }

    static SparseMat from_dense(const Mat& m) {
        SparseMat s(m.rows, m.cols);
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j)
                if (!m.at(i, j).is_zero()) s.add(i, j, m.at(i, j));
        return s;
    }
};

}  // namespace solvcohom
