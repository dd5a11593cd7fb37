#include "solvcohom/decomposition.hpp"

#include "golden.hpp"
#include "solvcohom/pipeline.hpp"
#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace solvcohom;
using testsupport::as_decomposition;
using testsupport::random_shapes;
using testsupport::scramble_basis;
using testsupport::sum_of_shapes;

TEST_CASE("decomposition oracle roundtrip") {
    // random shape sums under a random bidegree-preserving change of basis
    // must come back as exactly the original multiset
    testsupport::Rng rng(777);
    for (int iter = 0; iter < 1000; ++iter) {
        CAPTURE(iter);
        auto shapes = random_shapes(rng);
        Bicomplex b = scramble_basis(rng, sum_of_shapes(shapes));
        Decomposition expected = as_decomposition(shapes);
        Decomposition got = decompose(b);
        CHECK(got == expected);
    }
}

TEST_CASE("decomposition oracle roundtrip on denser complexes") {
    // bigger shape counts exercise chained squares and zigzags of length 4-5
    testsupport::Rng rng(779);
    for (int iter = 0; iter < 200; ++iter) {
        CAPTURE(iter);
        auto shapes = random_shapes(rng, 12, 4);
        Bicomplex b = scramble_basis(rng, sum_of_shapes(shapes));
        CHECK(decompose(b) == as_decomposition(shapes));
    }
}

TEST_CASE("decompose matches the reference decompositions") {
    for (const auto& pc : all_preset_cases()) {
        CAPTURE(pc.id);
        Decomposition got = decompose(build_C(pc.data).cx);
        CHECK(got == golden::decomposition_for(pc.id));
    }
}

TEST_CASE("counting rules reproduce direct cohomology") {
    testsupport::Rng rng(778);
    for (int iter = 0; iter < 300; ++iter) {
        Bicomplex b = scramble_basis(rng, sum_of_shapes(random_shapes(rng)));
        Decomposition d = decompose(b);
        auto bb = b.bounding_box();
        for (Flavor f :
             {Flavor::dolbeault, Flavor::conj_dolbeault, Flavor::bott_chern, Flavor::aeppli})
            for (int p = bb.pmin; p <= bb.pmax; ++p)
                for (int q = bb.qmin; q <= bb.qmax; ++q)
                    CHECK(cohomology_counts(d, f, p, q) == cohomology_dim(b, f, p, q));
    }
}

TEST_CASE("counting spot checks for g8 case (v)") {
    Decomposition d = golden::decomposition_for("g8_v");
    CHECK(cohomology_counts(d, Flavor::bott_chern, 1, 1) == 1);
    CHECK(cohomology_counts(d, Flavor::dolbeault, 1, 1) == 3);
    // a single square is acyclic in every flavor
    Decomposition sq;
    sq.add(Shape::square(0, 0));
    for (Flavor f :
         {Flavor::dolbeault, Flavor::conj_dolbeault, Flavor::bott_chern, Flavor::aeppli})
        for (int p = 0; p <= 1; ++p)
            for (int q = 0; q <= 1; ++q) CHECK(cohomology_counts(sq, f, p, q) == 0);
}

TEST_CASE("page1 and ddbar verdicts on the preset cases") {
    for (const auto& pc : all_preset_cases()) {
        CAPTURE(pc.id);
        Bicomplex c = build_C(pc.data).cx;
        Decomposition d = decompose(c);
        Page1Report p1 = page1_check(d);
        CHECK(p1.dots_and_len2_only);
        CHECK_FALSE(p1.has_squares);
        CHECK(ddbar_lemma(c).holds == golden::cases().at(pc.id).ddbar);
    }
}

TEST_CASE("closures have squares exactly when C differs from B") {
    for (const auto& pc : all_preset_cases()) {
        CAPTURE(pc.id);
        ClosureAlgebra alg = build_closure(pc.data);
        Decomposition d = decompose(alg.bc.cx);
        bool c_equals_b = build_C(pc.data).cx.cells == build_B(pc.data).cx.cells;
        CHECK(page1_check(d).has_squares == !c_equals_b);
        // removing the squares leaves exactly the decomposition of C
        Decomposition zig;
        for (const auto& e : d.entries)
            if (e.shape.kind != Shape::Kind::square) zig.add(e.shape, e.mult);
        zig.canonicalize();
        CHECK(zig == decompose(build_C(pc.data).cx));
    }
}

TEST_CASE("ddbar lemma verdict carries a witness") {
    Bicomplex line = sum_of_shapes({Shape::hline(1, 1)});
    auto v = ddbar_lemma(line);
    CHECK_FALSE(v.holds);
    CHECK(v.witness == "S_h^{1,1}");
    Bicomplex dots = sum_of_shapes({Shape::dot(0, 0), Shape::square(1, 1)});
    CHECK(ddbar_lemma(dots).holds);
}

TEST_CASE("decompose rejects invalid complexes") {
    Bicomplex bad;
    bad.cells[{0, 0}] = {"a"};
    bad.cells[{1, 0}] = {"b"};
    bad.cells[{2, 0}] = {"c"};
    SparseMat m(1, 1);
    m.add(0, 0, Gq(1));
    bad.del[{0, 0}] = m;
    bad.del[{1, 0}] = m;
    CHECK_THROWS_AS(decompose(bad), DecompositionFailure);
}

TEST_CASE("decomposition JSON and renders") {
    Decomposition d = decompose(sum_of_shapes({Shape::hline(1, 1), Shape::dot(0, 0)}));
    json j = decomposition_to_json(d);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["shape"] == "D");
    CHECK(j[1]["shape"] == "Sh");
    CHECK(j[1]["anchor"] == json::array({1, 1}));
    CHECK(j[1]["cells"] == json::array({json::array({1, 1}), json::array({2, 1})}));

    // 16 dots render as a plain grid of C's, no arrows
    Decomposition dots = golden::decomposition_for("g8_i");
    std::string grid = render_ascii(dots, {0, 3, 0, 3});
    CHECK(grid.find("->") == std::string::npos);
    CHECK(grid.find("C") != std::string::npos);

    // a single horizontal line renders as C -> C
    Decomposition line;
    line.add(Shape::hline(1, 1));
    std::string s = render_ascii(line, {1, 2, 1, 1});
    CHECK(s.find("C     ->  C") != std::string::npos);

    CHECK(render_ascii(Decomposition{}, Bicomplex{}.bounding_box()) == "(empty)\n");

    std::string dot = render_dot(d);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("c1_1 -> c2_1") != std::string::npos);
}
