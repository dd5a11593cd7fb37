#pragma once

#include "solvcohom/rational.hpp"

#include <cstdint>
#include <cstdlib>
#include <vector>

namespace solvcohom {

using IntVec = std::vector<std::int64_t>;

/// Subgroup of Z^n given by spanning vectors; membership decided by Hermite
/// column reduction. Exponent tuples of character products live here.
class IntegerLattice {
  public:
    IntegerLattice() = default;
    IntegerLattice(int dimension, std::vector<IntVec> generators)
        : dim_(dimension), hnf_(std::move(generators)) {
        for (const auto& g : hnf_)
            if (static_cast<int>(g.size()) != dim_) throw MathError("lattice generator dimension");
        reduce();
    }

    int dimension() const { return dim_; }
    const std::vector<IntVec>& basis() const { return hnf_; }

    bool contains(IntVec x) const {
        if (static_cast<int>(x.size()) != dim_) throw MathError("lattice member dimension");
        for (const auto& col : hnf_) {
            int r = pivot_row(col);
            if (x[r] % col[r] != 0) continue;  // try later columns only if untouched rows allow
            std::int64_t q = x[r] / col[r];
            for (int i = 0; i < dim_; ++i) x[i] -= q * col[i];
        }
        for (auto v : x)
            if (v != 0) return false;
        return true;
    }

  private:
    static int pivot_row(const IntVec& col) {
        for (std::size_t i = 0; i < col.size(); ++i)
            if (col[i] != 0) return static_cast<int>(i);
        return -1;
    }

    // Column-style Hermite reduction: after this, each column has a pivot row
    // strictly below the previous column's pivot, so membership reduction is
    // a single top-down pass.
    void reduce() {
        std::vector<IntVec> cols = std::move(hnf_);
        hnf_.clear();
        for (int row = 0; row < dim_; ++row) {
            // gcd-combine all columns with support starting at `row`
            int keep = -1;
            for (std::size_t j = 0; j < cols.size(); ++j) {
                if (cols[j].empty() || pivot_row(cols[j]) != row) continue;
                if (keep < 0) {
                    keep = static_cast<int>(j);
                    continue;
                }
                // Euclid on (cols[keep][row], cols[j][row])
                while (cols[j][row] != 0) {
                    std::int64_t q = cols[keep][row] / cols[j][row];
                    for (int i = 0; i < dim_; ++i) cols[keep][i] -= q * cols[j][i];
                    std::swap(cols[keep], cols[j]);
                }
            }
            if (keep >= 0) {
                if (cols[keep][row] < 0)
                    for (auto& v : cols[keep]) v = -v;
                hnf_.push_back(cols[keep]);
                cols[keep].clear();
            }
        }
    }

    int dim_ = 0;
    std::vector<IntVec> hnf_;
};

}  // namespace solvcohom
