#pragma once

#include "solvcohom/bicomplex.hpp"

#include <map>
#include <string>
#include <vector>

namespace solvcohom {

enum class Flavor { dolbeault, conj_dolbeault, bott_chern, aeppli };

inline std::string flavor_name(Flavor f) {
    switch (f) {
        case Flavor::dolbeault: return "dolbeault";
        case Flavor::conj_dolbeault: return "conj_dolbeault";
        case Flavor::bott_chern: return "bott_chern";
        case Flavor::aeppli: return "aeppli";
    }
    return "?";
}

struct CochainElement {
    Bidegree at;
    std::vector<Gq> coeffs;  // length = basis size at `at`
};

struct CohomologyGroup {
    Flavor flavor = Flavor::dolbeault;
    Bidegree at;
    int dimension = 0;
    std::vector<CochainElement> representatives;  // complement of the boundary space
};

namespace detail {

/// Quotient span(kernel)/span(boundary) with boundary ⊆ kernel: dimension and
/// representative columns (kernel columns extending the boundary, in order).
inline CohomologyGroup quotient_group(Flavor flavor, Bidegree at, const Mat& kernel,
                                      const Mat& boundary) {
    CohomologyGroup out;
    out.flavor = flavor;
    out.at = at;
    for (int j : extending_columns(boundary, kernel)) {
        CochainElement e;
        e.at = at;
        e.coeffs.resize(kernel.rows);
        for (int i = 0; i < kernel.rows; ++i) e.coeffs[i] = kernel.at(i, j);
        out.representatives.push_back(std::move(e));
    }
    out.dimension = static_cast<int>(out.representatives.size());
    return out;
}

}  // namespace detail

/// ker ∂̄ / im ∂̄ at (p,q).
inline CohomologyGroup dolbeault(const Bicomplex& b, int p, int q) {
    Bidegree c{p, q};
    Mat kernel = kernel_basis(b.delbar_at(c));
    Mat boundary = b.delbar_at({p, q - 1});
    return detail::quotient_group(Flavor::dolbeault, c, kernel, boundary);
}

/// ker ∂ / im ∂ at (p,q).
inline CohomologyGroup conj_dolbeault(const Bicomplex& b, int p, int q) {
    Bidegree c{p, q};
    Mat kernel = kernel_basis(b.del_at(c));
    Mat boundary = b.del_at({p - 1, q});
    return detail::quotient_group(Flavor::conj_dolbeault, c, kernel, boundary);
}

/// (ker ∂ ∩ ker ∂̄) / im ∂∂̄ at (p,q).
inline CohomologyGroup bott_chern(const Bicomplex& b, int p, int q) {
    Bidegree c{p, q};
    Mat kernel = kernel_basis(vstack(b.del_at(c), b.delbar_at(c)));
    Mat boundary = b.del_at({p - 1, q}) * b.delbar_at({p - 1, q - 1});
    return detail::quotient_group(Flavor::bott_chern, c, kernel, boundary);
}

/// ker ∂∂̄ / (im ∂ + im ∂̄) at (p,q).
inline CohomologyGroup aeppli(const Bicomplex& b, int p, int q) {
    Bidegree c{p, q};
    Mat kernel = kernel_basis(b.del_at({p, q + 1}) * b.delbar_at(c));
    Mat boundary = hstack(b.del_at({p - 1, q}), b.delbar_at({p, q - 1}));
    return detail::quotient_group(Flavor::aeppli, c, kernel, boundary);
}

inline CohomologyGroup cohomology(const Bicomplex& b, Flavor f, int p, int q) {
    switch (f) {
        case Flavor::dolbeault: return dolbeault(b, p, q);
        case Flavor::conj_dolbeault: return conj_dolbeault(b, p, q);
        case Flavor::bott_chern: return bott_chern(b, p, q);
        case Flavor::aeppli: return aeppli(b, p, q);
    }
    throw MathError("unknown flavor");
}

inline int cohomology_dim(const Bicomplex& b, Flavor f, int p, int q) {
    return cohomology(b, f, p, q).dimension;
}

// --- de Rham (total complex) ------------------------------------------------

struct DeRhamGroup {
    int degree = 0;
    int dimension = 0;
    std::vector<std::map<Bidegree, std::vector<Gq>>> representatives;
};

namespace detail {

/// d = ∂ + ∂̄ from total degree k to k+1, with the cells of each degree in
/// bidegree order and their start offsets reported.
inline Mat total_differential(const Bicomplex& b, int k, std::vector<Bidegree>* src_cells = nullptr,
                              std::vector<int>* src_offsets = nullptr) {
    std::vector<Bidegree> src, dst;
    for (const auto& [c, basis] : b.cells) {
        if (basis.empty()) continue;
        if (c.p + c.q == k) src.push_back(c);
        if (c.p + c.q == k + 1) dst.push_back(c);
    }
    auto offset_of = [](const std::vector<Bidegree>& cells, const Bicomplex& bb) {
        std::vector<int> off(cells.size() + 1, 0);
        for (std::size_t i = 0; i < cells.size(); ++i) off[i + 1] = off[i] + bb.dim(cells[i]);
        return off;
    };
    std::vector<int> soff = offset_of(src, b), doff = offset_of(dst, b);
    Mat m(doff.back(), soff.back());
    auto place = [&](Bidegree to, const Mat& block, int src_i) {
        for (std::size_t di = 0; di < dst.size(); ++di) {
            if (dst[di] != to) continue;
            for (int r = 0; r < block.rows; ++r)
                for (int cc = 0; cc < block.cols; ++cc)
                    m.at(doff[di] + r, soff[src_i] + cc) = block.at(r, cc);
        }
    };
    for (std::size_t si = 0; si < src.size(); ++si) {
        place({src[si].p + 1, src[si].q}, b.del_at(src[si]), static_cast<int>(si));
        place({src[si].p, src[si].q + 1}, b.delbar_at(src[si]), static_cast<int>(si));
    }
    if (src_cells) *src_cells = src;
    if (src_offsets) *src_offsets = soff;
    return m;
}

}  // namespace detail

/// Cohomology of (⊕_{p+q=k} A^{p,q}, ∂+∂̄) in degree k.
inline DeRhamGroup de_rham(const Bicomplex& b, int k) {
    std::vector<Bidegree> cells;
    std::vector<int> offsets;
    Mat dk = detail::total_differential(b, k, &cells, &offsets);
    Mat kernel = kernel_basis(dk);
    Mat boundary = detail::total_differential(b, k - 1);
    DeRhamGroup out;
    out.degree = k;
    for (int j : extending_columns(boundary, kernel)) {
        std::map<Bidegree, std::vector<Gq>> rep;
        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            std::vector<Gq> part(b.dim(cells[ci]));
            bool nonzero = false;
            for (int i = 0; i < static_cast<int>(part.size()); ++i) {
                part[i] = kernel.at(offsets[ci] + i, j);
                nonzero |= !part[i].is_zero();
            }
            if (nonzero) rep[cells[ci]] = std::move(part);
        }
        out.representatives.push_back(std::move(rep));
    }
    out.dimension = static_cast<int>(out.representatives.size());
    return out;
}

/// Betti numbers over the full total-degree range.
inline std::vector<int> betti_numbers(const Bicomplex& b) {
    auto bb = b.bounding_box();
    if (bb.empty()) return {};
    std::vector<int> out;
    for (int k = bb.pmin + bb.qmin; k <= bb.pmax + bb.qmax; ++k)
        out.push_back(de_rham(b, k).dimension);
    return out;
}

/// Is v in im∂ + im∂̄ + span(extra) at its bidegree? The membership test
/// Massey nonvanishing reduces to.
inline bool in_image_plus_span(const Bicomplex& b, const CochainElement& v,
                               const std::vector<CochainElement>& extra) {
    Bidegree c = v.at;
    Mat span = hstack(b.del_at({c.p - 1, c.q}), b.delbar_at({c.p, c.q - 1}));
    for (const auto& e : extra) {
        if (e.at != c) throw MathError("span element at wrong bidegree");
        span = hstack(span, column_vector(e.coeffs));
    }
    return in_span(span, v.coeffs);
}

}  // namespace solvcohom
