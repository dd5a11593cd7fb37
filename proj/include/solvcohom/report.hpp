#pragma once

#include "solvcohom/cohomology.hpp"
#include "solvcohom/decomposition.hpp"
#include "solvcohom/formality.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace solvcohom {

using json = nlohmann::ordered_json;

struct JsonFormatError : MathError {
    using MathError::MathError;
};

// --- bicomplex <-> JSON ------------------------------------------------------

inline json bicomplex_to_json(const Bicomplex& b) {
    json out;
    out["cells"] = json::array();
    for (const auto& [c, basis] : b.cells) {
        if (basis.empty()) continue;
        out["cells"].push_back({{"p", c.p}, {"q", c.q}, {"basis", basis}});
    }
    auto mats = [&](const std::map<Bidegree, SparseMat>& src) {
        json arr = json::array();
        for (const auto& [c, m] : src) {
            if (m.entries.empty()) continue;
            json entries = json::array();
            for (const auto& e : m.entries)
                entries.push_back(json::array({e.row, e.col, to_string(e.value)}));
            arr.push_back({{"p", c.p}, {"q", c.q}, {"entries", entries}});
        }
        return arr;
    };
    out["del"] = mats(b.del);
    out["delbar"] = mats(b.delbar);
    return out;
}

inline Bicomplex bicomplex_from_json(const json& j) {
    Bicomplex b;
    try {
        for (const auto& cell : j.at("cells")) {
            Bidegree c{cell.at("p").get<int>(), cell.at("q").get<int>()};
            if (b.cells.count(c)) throw JsonFormatError("duplicate cell in bicomplex JSON");
            b.cells[c] = cell.at("basis").get<std::vector<std::string>>();
        }
        auto mats = [&](const char* key, std::map<Bidegree, SparseMat>& dst, Bidegree step) {
            if (!j.contains(key)) return;
            for (const auto& mj : j.at(key)) {
                Bidegree c{mj.at("p").get<int>(), mj.at("q").get<int>()};
                SparseMat m(b.dim(c + step), b.dim(c));
                for (const auto& e : mj.at("entries")) {
                    int r = e.at(0).get<int>(), cc = e.at(1).get<int>();
                    if (r < 0 || r >= m.rows || cc < 0 || cc >= m.cols)
                        throw JsonFormatError("matrix entry out of range");
                    m.add(r, cc, parse_gaussian(e.at(2).get<std::string>()));
                }
                dst[c] = std::move(m);
            }
        };
        mats("del", b.del, {1, 0});
        mats("delbar", b.delbar, {0, 1});
    } catch (const json::exception& e) {
        throw JsonFormatError(std::string("bad bicomplex JSON: ") + e.what());
    }
    return b;
}

// --- decomposition JSON ------------------------------------------------------

inline json decomposition_to_json(const Decomposition& d) {
    json out = json::array();
    for (const auto& e : d.entries) {
        std::string kind;
        if (e.shape.kind == Shape::Kind::square)
            kind = "square";
        else if (e.shape.length() == 1)
            kind = "D";
        else if (e.shape.length() == 2)
            kind = e.shape.cells[0].p != e.shape.cells[1].p ? "Sh" : "Sv";
        else
            kind = "zigzag";
        json cells = json::array();
        for (auto c : e.shape.cells) cells.push_back(json::array({c.p, c.q}));
        Bidegree a = e.shape.anchor();
        out.push_back({{"shape", kind},
                       {"anchor", json::array({a.p, a.q})},
                       {"cells", cells},
                       {"mult", e.mult}});
    }
    return out;
}

// --- dimension tables --------------------------------------------------------

struct DimsTable {
    std::vector<std::string> columns;
    std::map<Bidegree, std::vector<int>> rows;  // bounded grid, all cells in the box
    std::vector<int> betti;

    static DimsTable of(const Bicomplex& b) {
        DimsTable t;
        t.columns = {"dolbeault", "conj_dolbeault", "bott_chern", "aeppli"};
        auto bb = b.bounding_box();
        for (int p = bb.pmin; p <= bb.pmax; ++p)
            for (int q = bb.qmin; q <= bb.qmax; ++q)
                t.rows[{p, q}] = {cohomology_dim(b, Flavor::dolbeault, p, q),
                                  cohomology_dim(b, Flavor::conj_dolbeault, p, q),
                                  cohomology_dim(b, Flavor::bott_chern, p, q),
                                  cohomology_dim(b, Flavor::aeppli, p, q)};
        t.betti = betti_numbers(b);
        return t;
    }
};

/// Reference row order: total-degree blocks starting at degree 1, p descending
/// within each block.
inline std::vector<Bidegree> paper_row_order(const DimsTable& t, bool include_degree0) {
    int pmax = 0, qmax = 0, pmin = 0, qmin = 0;
    bool first = true;
    for (const auto& [c, row] : t.rows) {
        if (first) {
            pmin = pmax = c.p;
            qmin = qmax = c.q;
            first = false;
        }
        pmin = std::min(pmin, c.p);
        pmax = std::max(pmax, c.p);
        qmin = std::min(qmin, c.q);
        qmax = std::max(qmax, c.q);
    }
    std::vector<Bidegree> order;
    for (int k = pmin + qmin + (include_degree0 ? 0 : 1); k <= pmax + qmax; ++k)
        for (int p = std::min(k - qmin, pmax); p >= std::max(pmin, k - qmax); --p)
            if (t.rows.count({p, k - p})) order.push_back({p, k - p});
    return order;
}

inline json dims_to_json(const DimsTable& t) {
    json out;
    out["columns"] = t.columns;
    out["rows"] = json::array();
    for (auto c : paper_row_order(t, true)) {
        json row = {{"p", c.p}, {"q", c.q}};
        const auto& vals = t.rows.at(c);
        for (std::size_t i = 0; i < t.columns.size(); ++i) row[t.columns[i]] = vals[i];
        out["rows"].push_back(row);
    }
    out["betti"] = t.betti;
    return out;
}

inline std::string dims_to_text(const DimsTable& t) {
    std::ostringstream os;
    os << std::left << std::setw(8) << "(p,q)";
    for (const auto& c : t.columns) os << std::setw(16) << c;
    os << "\n";
    int last_degree = -1;
    for (auto c : paper_row_order(t, true)) {
        if (c.p + c.q != last_degree && last_degree >= 0) os << "\n";
        last_degree = c.p + c.q;
        os << std::setw(8) << ("(" + std::to_string(c.p) + "," + std::to_string(c.q) + ")");
        for (int v : t.rows.at(c)) os << std::setw(16) << v;
        os << "\n";
    }
    os << "\nbetti:";
    for (int b : t.betti) os << " " << b;
    os << "\n";
    return os.str();
}

inline std::string dims_to_latex(const DimsTable& t) {
    auto header = [](const std::string& name) -> std::string {
        if (name == "dolbeault") return "h_{\\bar\\partial}";
        if (name == "conj_dolbeault") return "h_{\\partial}";
        if (name == "bott_chern") return "h_{BC}";
        if (name == "aeppli") return "h_{A}";
        return name;
    };
    std::ostringstream os;
    os << "\\begin{tabular}{c||";
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << "c";
    os << "}\n\\hline\n$(p,q)$";
    for (const auto& c : t.columns) os << " & $" << header(c) << "$";
    os << "\\\\\n\\hline\n";
    int last_degree = -1;
    for (auto c : paper_row_order(t, false)) {
        if (c.p + c.q != last_degree && last_degree >= 0) os << "\\hline\n";
        last_degree = c.p + c.q;
        os << "$(" << c.p << "," << c.q << ")$";
        for (int v : t.rows.at(c)) os << " & " << v;
        os << "\\\\\n";
    }
    os << "\\hline\n\\end{tabular}\n";
    return os.str();
}

// --- formality ---------------------------------------------------------------

inline json formality_to_json(const FormalityReport& r) {
    json out;
    out["ddbar_lemma"] = r.ddbar;
    out["strongly_formal"] = r.strong;
    out["weakly_formal"] = r.weak;
    out["dolbeault_formal"] = r.dolbeault;
    out["geometric_bc_obstructed"] = r.geometric_bc_obstructed;
    out["triples_scanned"] = r.triples_scanned;
    if (r.witness) {
        out["witness"] = {{"a12", r.witness->labels[0]},
                          {"a23", r.witness->labels[1]},
                          {"a34", r.witness->labels[2]},
                          {"target", json::array({r.witness->target.p, r.witness->target.q})}};
    }
    return out;
}

inline std::string formality_to_text(const FormalityReport& r) {
    std::ostringstream os;
    auto line = [&](const char* k, bool v) { os << std::left << std::setw(26) << k << (v ? "yes" : "no") << "\n"; };
    line("ddbar-lemma:", r.ddbar);
    line("strongly formal:", r.strong);
    line("weakly formal:", r.weak);
    line("Dolbeault formal:", r.dolbeault);
    line("geometric-BC obstructed:", r.geometric_bc_obstructed);
    if (r.witness)
        os << "witness: <[" << r.witness->labels[0] << "], [" << r.witness->labels[1] << "], ["
           << r.witness->labels[2] << "]> nonvanishing in H_A^{" << r.witness->target.p << ","
           << r.witness->target.q << "} quotient\n";
    os << "triples scanned: " << r.triples_scanned << "\n";
    return os.str();
}

inline json massey_to_json(const ClosureAlgebra& alg, const MasseyResult& r) {
    auto cochain = [&](const CochainElement& e) {
        json terms = json::array();
        const auto& labels = alg.bc.cx.cells.count(e.at) ? alg.bc.cx.cells.at(e.at)
                                                         : std::vector<std::string>{};
        for (std::size_t i = 0; i < e.coeffs.size(); ++i)
            if (!e.coeffs[i].is_zero())
                terms.push_back({{"coeff", to_string(e.coeffs[i])}, {"label", labels[i]}});
        return json{{"p", e.at.p}, {"q", e.at.q}, {"terms", terms}};
    };
    json out;
    out["inputs"] = json::array();
    for (auto c : r.inputs) out["inputs"].push_back(json::array({c.p, c.q}));
    out["representative"] = cochain(r.representative);
    out["alpha13"] = cochain(r.alpha13);
    out["alpha24"] = cochain(r.alpha24);
    out["quotient_dimension"] = r.quotient_dimension;
    out["nonvanishing"] = r.nonvanishing;
    return out;
}

inline std::string massey_to_text(const ClosureAlgebra& alg, const MasseyResult& r) {
    std::ostringstream os;
    auto cochain = [&](const CochainElement& e) {
        std::string s;
        const auto& labels = alg.bc.cx.cells.count(e.at) ? alg.bc.cx.cells.at(e.at)
                                                         : std::vector<std::string>{};
        for (std::size_t i = 0; i < e.coeffs.size(); ++i) {
            if (e.coeffs[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + to_string(e.coeffs[i]) + ")*" + labels[i];
        }
        return s.empty() ? "0" : s;
    };
    os << "representative at (" << r.representative.at.p << "," << r.representative.at.q
       << "): " << cochain(r.representative) << "\n";
    os << "alpha13: " << cochain(r.alpha13) << "\n";
    os << "alpha24: " << cochain(r.alpha24) << "\n";
    os << "quotient dimension: " << r.quotient_dimension << "\n";
    os << "nonvanishing: " << (r.nonvanishing ? "yes" : "no") << "\n";
    return os.str();
}

}  // namespace solvcohom
