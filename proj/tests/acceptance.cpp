// Acceptance suite: exercises every acceptance criterion at tolerance zero
// and prints one PASS/FAIL line per criterion. Exits nonzero when any fails.

#include "golden.hpp"
#include "solvcohom/pipeline.hpp"
#include "support.hpp"

#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace solvcohom;

namespace {

int failures = 0;

void criterion(int number, const std::string& title, const std::function<void()>& body) {
    try {
        body();
        std::cout << "PASS criterion " << number << ": " << title << "\n";
    } catch (const std::exception& e) {
        ++failures;
        std::cout << "FAIL criterion " << number << ": " << title << " -- " << e.what() << "\n";
    }
}

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename A, typename B>
void expect_eq(const A& a, const B& b, const std::string& what) {
    if (!(a == b)) throw CheckFailure(what);
}

void expect(bool ok, const std::string& what) {
    if (!ok) throw CheckFailure(what);
}

const SplittingData& case_data(const std::string& id) {
    static const std::vector<PresetCase> cases = all_preset_cases();
    for (const auto& pc : cases)
        if (pc.id == id) return pc.data;
    throw CheckFailure("unknown case " + id);
}

std::string cell_name(Bidegree c) {
    return "(" + std::to_string(c.p) + "," + std::to_string(c.q) + ")";
}

// criterion 1: Dolbeault dimensions match the tables for all 15 cases
void dolbeault_tables() {
    for (const auto& pc : all_preset_cases()) {
        Bicomplex C = build_C(pc.data).cx;
        const auto& g = golden::cases().at(pc.id);
        const auto& rows = golden::row_order();
        for (std::size_t i = 0; i < rows.size(); ++i)
            expect_eq(cohomology_dim(C, Flavor::dolbeault, rows[i].p, rows[i].q), g.dolbeault[i],
                      pc.id + " dolbeault at " + cell_name(rows[i]));
    }
}

// criterion 2: Bott-Chern dimensions and representative labels
void bott_chern_tables() {
    for (const auto& pc : all_preset_cases()) {
        Bicomplex C = build_C(pc.data).cx;
        const auto& g = golden::cases().at(pc.id);
        const auto& rows = golden::row_order();
        for (std::size_t i = 0; i < rows.size(); ++i)
            expect_eq(cohomology_dim(C, Flavor::bott_chern, rows[i].p, rows[i].q), g.bott_chern[i],
                      pc.id + " bott-chern at " + cell_name(rows[i]));

        // representatives: single monomials matching the printed lists
        golden::LabelTable expected;
        if (golden::bc_labels().count(pc.id)) {
            expected = golden::bc_labels().at(pc.id);
        } else if (g.ddbar) {
            std::string surrogate = pc.id;
            if (pc.id == "g1_iii") surrogate = "g2_generic";  // identical data and labels
            expected = golden::b_labels().at(surrogate);
        } else {
            continue;  // g1 non-ddbar cases: no generator lists are on record
        }
        for (const auto& [c, labels] : expected) {
            auto group = bott_chern(C, c.p, c.q);
            std::multiset<std::string> got;
            for (const auto& rep : group.representatives) {
                int nonzero = -1;
                for (std::size_t i = 0; i < rep.coeffs.size(); ++i)
                    if (!rep.coeffs[i].is_zero()) {
                        expect(nonzero < 0, pc.id + " representative at " + cell_name(c) +
                                                " is not a scalar multiple of one monomial");
                        nonzero = static_cast<int>(i);
                    }
                expect(nonzero >= 0, pc.id + " zero representative at " + cell_name(c));
                got.insert(C.cells.at(c)[nonzero]);
            }
            expect_eq(got, std::multiset<std::string>(labels.begin(), labels.end()),
                      pc.id + " BC labels at " + cell_name(c));
        }
    }
}

// criterion 3: decompositions equal the reference multisets
void decompositions() {
    for (const auto& pc : all_preset_cases())
        expect_eq(decompose(build_C(pc.data).cx), golden::decomposition_for(pc.id),
                  pc.id + " decomposition");
}

// criterion 4: ddbar-lemma verdicts
void ddbar_verdicts() {
    for (const auto& pc : all_preset_cases())
        expect_eq(ddbar_lemma(build_C(pc.data).cx).holds, golden::cases().at(pc.id).ddbar,
                  pc.id + " ddbar verdict");
}

// criterion 5: the six explicit published triples, and vanishing on ddbar
// cases. The published triples are asserted nonvanishing exactly as stated;
// the exact quotient computation disagrees for four of them (their
// representatives are exact in the closure algebra), so this criterion
// reports the discrepancy rather than papering over it.
void massey_witnesses() {
    struct Published {
        const char* id;
        std::array<std::string, 3> triple;
    };
    const std::array<std::string, 3> full = {"T dz_{32b}", "Tb^-1 dz_{1b3b}", "Tb dz_{23b}"};
    const std::array<std::string, 3> prods = {"T^-2 dz_{131b}", "Tb^2 dz_{22b3b}", "dz_{3b}"};
    const std::vector<Published> published = {
        {"g1_i", full},
        {"g1_ii", prods},
        {"g8_ii", {"T^-1 dz_{13}", "Tb dz_{2b3b}", "dz_{3b}"}},
        {"g8_iii", {"Tb^-1 dz_{13b}", "T dz_{32b}", "dz_{3}"}},
        {"g8_v", prods},
        {"g8_vi", prods},  // reuse of the g1 case (ii) triple
        {"g8_vii", full},  // reuse of the g1 case (i) triple
    };
    std::string vanished;
    for (const auto& w : published) {
        const SplittingData& data = case_data(w.id);
        ClosureAlgebra alg = build_closure(data);
        MasseyResult r =
            massey_abc(alg, monomial_class(alg, w.triple[0]), monomial_class(alg, w.triple[1]),
                       monomial_class(alg, w.triple[2]));
        if (!r.nonvanishing) vanished += std::string(vanished.empty() ? "" : ", ") + w.id;
    }
    for (const char* id : {"g1_iii", "g2a0_pi2", "g2a0_pi3", "g2_generic", "g8_i", "g8_iv"}) {
        const SplittingData& data = case_data(id);
        ClosureAlgebra alg = build_closure(data);
        ScanOutcome scan = scan_massey_obstruction(alg, data, 2000000);
        expect(scan.exhausted, std::string(id) + " scan was truncated");
        expect(!scan.witness, std::string(id) + " has a nonvanishing triple");
    }
    expect(vanished.empty(),
           "published triples evaluate to vanishing under the exact quotient computation for: " +
               vanished +
               " (their representatives are exact in the closure; see tests/test_formality.cpp)");
}

// criterion 6: page-1 structure of C and squares in the closures
void page1_structure() {
    for (const auto& pc : all_preset_cases()) {
        BuiltComplex C = build_C(pc.data);
        Decomposition dc = decompose(C.cx);
        Page1Report p1 = page1_check(dc);
        expect(p1.dots_and_len2_only, pc.id + " C has zigzags longer than 2");
        expect(!p1.has_squares, pc.id + " C has squares");

        ClosureAlgebra alg = build_closure(pc.data);
        bool closure_squares = page1_check(decompose(alg.bc.cx)).has_squares;
        bool c_equals_b = C.cx.cells == build_B(pc.data).cx.cells;
        expect_eq(closure_squares, !c_equals_b, pc.id + " closure square criterion");
    }
}

// criterion 7: randomized property suites, >= 1000 cases each
void property_suites() {
    using namespace testsupport;
    {
        Rng rng(101);
        for (int i = 0; i < 1000; ++i) {
            Bicomplex b = scramble_basis(rng, sum_of_shapes(random_shapes(rng)));
            expect(validate(b).empty(), "validation identities failed");
        }
    }
    {
        Rng rng(102);
        for (int i = 0; i < 1000; ++i) {
            auto shapes = random_shapes(rng);
            Bicomplex b = scramble_basis(rng, sum_of_shapes(shapes));
            expect_eq(decompose(b), as_decomposition(shapes),
                      "oracle roundtrip failed at iteration " + std::to_string(i));
        }
    }
    {
        Rng rng(103);
        for (int i = 0; i < 1000; ++i) {
            Bicomplex b = scramble_basis(rng, sum_of_shapes(random_shapes(rng)));
            Decomposition d = decompose(b);
            auto bb = b.bounding_box();
            for (Flavor f :
                 {Flavor::dolbeault, Flavor::conj_dolbeault, Flavor::bott_chern, Flavor::aeppli})
                for (int p = bb.pmin; p <= bb.pmax; ++p)
                    for (int q = bb.qmin; q <= bb.qmax; ++q)
                        expect_eq(cohomology_counts(d, f, p, q), cohomology_dim(b, f, p, q),
                                  "zigzag counting disagrees with direct cohomology");
        }
    }
    {
        Rng rng(104);
        for (int i = 0; i < 1000; ++i) {
            Bicomplex b = scramble_basis(rng, sum_of_shapes(random_shapes(rng)));
            auto bb = b.bounding_box();
            long by_dims = 0, by_dolbeault = 0, by_derham = 0;
            for (int p = bb.pmin; p <= bb.pmax; ++p)
                for (int q = bb.qmin; q <= bb.qmax; ++q) {
                    int sign = (p + q) % 2 == 0 ? 1 : -1;
                    by_dims += sign * b.dim({p, q});
                    by_dolbeault += sign * cohomology_dim(b, Flavor::dolbeault, p, q);
                }
            auto betti = betti_numbers(b);
            for (std::size_t k = 0; k < betti.size(); ++k)
                by_derham +=
                    ((bb.pmin + bb.qmin + static_cast<int>(k)) % 2 == 0 ? 1 : -1) * betti[k];
            expect(by_dims == by_dolbeault && by_dims == by_derham, "euler inconsistency");
        }
    }
    {
        Rng rng(105);
        for (int i = 0; i < 1000; ++i) {
            Bicomplex b = scramble_basis(rng, sum_of_shapes(random_shapes(rng)));
            auto bb = b.bounding_box();
            for (int p = bb.pmin; p <= bb.pmax; ++p)
                for (int q = bb.qmin; q <= bb.qmax; ++q)
                    expect(cohomology_dim(b, Flavor::bott_chern, p, q) +
                                   cohomology_dim(b, Flavor::aeppli, p, q) >=
                               cohomology_dim(b, Flavor::dolbeault, p, q) +
                                   cohomology_dim(b, Flavor::conj_dolbeault, p, q),
                           "zigzag inequality violated");
        }
    }
    {
        Rng rng(106);
        for (int i = 0; i < 1000; ++i) {
            Bicomplex half = sum_of_shapes(random_shapes(rng));
            Bicomplex b = scramble_basis(rng, direct_sum(half, conjugate(half)));
            auto bb = b.bounding_box();
            for (int p = bb.pmin; p <= bb.pmax; ++p)
                for (int q = bb.qmin; q <= bb.qmax; ++q) {
                    expect(cohomology_dim(b, Flavor::bott_chern, p, q) ==
                               cohomology_dim(b, Flavor::bott_chern, q, p),
                           "BC conjugation symmetry violated");
                    expect(cohomology_dim(b, Flavor::aeppli, p, q) ==
                               cohomology_dim(b, Flavor::aeppli, q, p),
                           "Aeppli conjugation symmetry violated");
                }
        }
    }
    {
        // Massey verdict invariance under primitive perturbation
        Rng rng(107);
        SplittingData data = case_data("g1_i");
        ClosureAlgebra alg = build_closure(data);
        BottChernClass a12 = monomial_class(alg, "T dz_{32b}");
        BottChernClass a23 = monomial_class(alg, "Tb^-1 dz_{1b3b}");
        BottChernClass a34 = monomial_class(alg, "Tb dz_{23b}");
        MasseyResult base = massey_abc(alg, a12, a23, a34);
        const Bicomplex& cx = alg.bc.cx;
        Bidegree c13 = base.alpha13.at;
        Mat ker = kernel_basis(cx.del_at({c13.p, c13.q + 1}) * cx.delbar_at(c13));
        std::vector<CochainElement> denom;
        for (const auto& h :
             aeppli(cx, a23.rep.at.p + a34.rep.at.p - 1, a23.rep.at.q + a34.rep.at.q - 1)
                 .representatives)
            denom.push_back(wedge_cochain(alg, a12.rep, h));
        for (const auto& h :
             aeppli(cx, a12.rep.at.p + a23.rep.at.p - 1, a12.rep.at.q + a23.rep.at.q - 1)
                 .representatives)
            denom.push_back(wedge_cochain(alg, h, a34.rep));
        int sign = (a23.rep.at.p + a23.rep.at.q) % 2 ? -1 : 1;
        for (int i = 0; i < 1000; ++i) {
            CochainElement h{c13, std::vector<Gq>(cx.dim(c13))};
            for (int j = 0; j < ker.cols; ++j) {
                Gq coeff = random_gq(rng, 3);
                for (int r = 0; r < ker.rows; ++r) h.coeffs[r] += coeff * ker.at(r, j);
            }
            CochainElement shift = wedge_cochain(alg, h, a34.rep);
            CochainElement rep = base.representative;
            for (std::size_t r = 0; r < rep.coeffs.size(); ++r)
                rep.coeffs[r] -= Gq(sign) * shift.coeffs[r];
            expect(!in_image_plus_span(cx, rep, denom) == base.nonvanishing,
                   "Massey verdict changed under primitive perturbation");
        }
    }
}

// criterion 8: the cross-family isomorphy checks
void isomorphy_checks() {
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"g2_qodd", "g1_i"},   {"g2_qeven", "g1_ii"}, {"g2_generic", "g1_iii"},
        {"g8_vii", "g1_i"},    {"g8_vi", "g1_ii"},    {"g8_iv", "g1_iii"},
    };
    for (const auto& [lhs, rhs] : pairs) {
        Bicomplex a = build_C(case_data(lhs)).cx;
        Bicomplex b = build_C(case_data(rhs)).cx;
        for (int p = 0; p <= 3; ++p)
            for (int q = 0; q <= 3; ++q)
                expect_eq(a.dim({p, q}), b.dim({p, q}),
                          lhs + " vs " + rhs + " dims at " + cell_name({p, q}));
        expect_eq(decompose(a), decompose(b), lhs + " vs " + rhs + " decompositions");
        for (Flavor f :
             {Flavor::dolbeault, Flavor::conj_dolbeault, Flavor::bott_chern, Flavor::aeppli})
            for (int p = 0; p <= 3; ++p)
                for (int q = 0; q <= 3; ++q)
                    expect_eq(cohomology_dim(a, f, p, q), cohomology_dim(b, f, p, q),
                              lhs + " vs " + rhs + " " + flavor_name(f) + " at " +
                                  cell_name({p, q}));
    }
    // the g1/g2 pairs are label-isomorphic on the nose
    expect_eq(build_C(case_data("g2_qodd")).cx.cells, build_C(case_data("g1_i")).cx.cells,
              "g2_qodd label isomorphism");
}

}  // namespace

int main(int argc, char** argv) {
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    auto run = [&](int number, const std::string& title, const std::function<void()>& body) {
        if (only == 0 || only == number) criterion(number, title, body);
    };
    run(1, "Dolbeault dimension tables for all fifteen cases", dolbeault_tables);
    run(2, "Bott-Chern dimension tables and representative labels", bott_chern_tables);
    run(3, "decompositions match the reference multisets", decompositions);
    run(4, "ddbar-lemma verdicts", ddbar_verdicts);
    run(5, "Massey witnesses nonvanishing, ddbar cases vanish", massey_witnesses);
    run(6, "page-1 structure and closure squares", page1_structure);
    run(7, "randomized property suites (>= 1000 cases each)", property_suites);
    run(8, "cross-family isomorphy checks", isomorphy_checks);
    if (failures) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << (only ? "criterion passed\n" : "all acceptance criteria passed\n");
    return 0;
}
