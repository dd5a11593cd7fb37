#pragma once

#include "solvcohom/rational.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace solvcohom {

/// Strictly increasing list of coordinate indices; one wedge monomial factor
/// per index. Separate instances track holomorphic and antiholomorphic parts.
struct IndexSet {
    std::vector<int> indices;

    IndexSet() = default;
    IndexSet(std::initializer_list<int> il) : indices(il) { canonical_check(); }
    explicit IndexSet(std::vector<int> v) : indices(std::move(v)) { canonical_check(); }

    void canonical_check() const {
        for (std::size_t i = 1; i < indices.size(); ++i)
            if (indices[i - 1] >= indices[i]) throw MathError("index set not strictly increasing");
    }

    int size() const { return static_cast<int>(indices.size()); }
    bool empty() const { return indices.empty(); }
    bool contains(int k) const { return std::binary_search(indices.begin(), indices.end(), k); }

    friend auto operator<=>(const IndexSet&, const IndexSet&) = default;
};

struct MergeResult {
    IndexSet set;
    int sign;  // +1 or -1
};

/// Sorted union of a and b with the parity sign of the merging permutation;
/// absent when they share an index (the wedge vanishes).
inline std::optional<MergeResult> merge_with_sign(const IndexSet& a, const IndexSet& b) {
    MergeResult out;
    out.sign = 1;
    out.set.indices.reserve(a.indices.size() + b.indices.size());
    std::size_t i = 0, j = 0;
    while (i < a.indices.size() && j < b.indices.size()) {
        if (a.indices[i] == b.indices[j]) return std::nullopt;
        if (a.indices[i] < b.indices[j]) {
            out.set.indices.push_back(a.indices[i++]);
        } else {
            // b[j] crosses the remaining factors of a
            if ((a.indices.size() - i) % 2 != 0) out.sign = -out.sign;
            out.set.indices.push_back(b.indices[j++]);
        }
    }
    while (i < a.indices.size()) out.set.indices.push_back(a.indices[i++]);
    while (j < b.indices.size()) out.set.indices.push_back(b.indices[j++]);
    return out;
}

/// merge_with_sign({k}, a); used by the differentials when prepending dz_k.
inline std::optional<MergeResult> insert_with_sign(int k, const IndexSet& a) {
    IndexSet single;
    single.indices.push_back(k);
    return merge_with_sign(single, a);
}

/// "121̄3̄"-style index rendering; bar marks antiholomorphic indices. With
/// `ascii` the bar is a 'b' suffix instead. Indices above 9 get separating
/// commas to stay unambiguous.
inline std::string render_indices(const IndexSet& hol, const IndexSet& antihol, bool ascii) {
    bool wide = false;
    for (int k : hol.indices) wide |= k > 9;
    for (int k : antihol.indices) wide |= k > 9;
    std::string out;
    auto append = [&](int k, bool bar) {
        if (wide && !out.empty()) out += ',';
        out += std::to_string(k);
        if (bar) out += ascii ? "b" : "̄";
    };
    for (int k : hol.indices) append(k, false);
    for (int k : antihol.indices) append(k, true);
    return out;
}

}  // namespace solvcohom
