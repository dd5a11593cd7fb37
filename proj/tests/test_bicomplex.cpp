#include "solvcohom/bicomplex.hpp"

#include "solvcohom/report.hpp"
#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace solvcohom;
using testsupport::random_shapes;
using testsupport::scramble_basis;
using testsupport::sum_of_shapes;

TEST_CASE("validate accepts the zero complex and shape sums") {
    CHECK(validate(Bicomplex{}).empty());
    testsupport::Rng rng(11);
    for (int iter = 0; iter < 1000; ++iter) {
        Bicomplex b = scramble_basis(rng, sum_of_shapes(random_shapes(rng)));
        CAPTURE(iter);
        CHECK(validate(b).empty());
    }
}

TEST_CASE("validate reports a single del-del violation with its bidegree") {
    // 3-cell chain with non-composing matrices
    Bicomplex b;
    b.cells[{0, 0}] = {"a"};
    b.cells[{1, 0}] = {"b"};
    b.cells[{2, 0}] = {"c"};
    SparseMat m(1, 1);
    m.add(0, 0, Gq(1));
    b.del[{0, 0}] = m;
    b.del[{1, 0}] = m;
    auto v = validate(b);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == Violation::Kind::del_del);
    CHECK(v[0].at == Bidegree{0, 0});
    CHECK(violation_text(v[0]).find("(0,0)") != std::string::npos);
}

TEST_CASE("validate reports inconsistent matrix shapes") {
    Bicomplex b;
    b.cells[{0, 0}] = {"a", "b"};
    b.cells[{1, 0}] = {"c"};
    b.del[{0, 0}] = SparseMat(1, 1);  // should be 1x2
    auto v = validate(b);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == Violation::Kind::shape);
}

TEST_CASE("conjugate is an involution preserving validity") {
    testsupport::Rng rng(12);
    for (int iter = 0; iter < 300; ++iter) {
        Bicomplex b = scramble_basis(rng, sum_of_shapes(random_shapes(rng)));
        Bicomplex cb = conjugate(b);
        CHECK(validate(cb).empty());
        CHECK(conjugate(cb) == b);
    }
}

TEST_CASE("conjugate transposes dimensions") {
    Bicomplex b = sum_of_shapes({Shape::hline(1, 0), Shape::dot(0, 2)});
    Bicomplex cb = conjugate(b);
    CHECK(cb.dim({0, 1}) == 1);
    CHECK(cb.dim({0, 2}) == 1);
    CHECK(cb.dim({2, 0}) == 1);
    CHECK(b.dim({1, 0}) == 1);
}

TEST_CASE("direct_sum adds dimensions blockwise") {
    Bicomplex a = sum_of_shapes({Shape::square(0, 0)});
    Bicomplex b = sum_of_shapes({Shape::dot(1, 1), Shape::vline(0, 0)});
    Bicomplex s = direct_sum(a, b);
    CHECK(s.dim({0, 0}) == 2);
    CHECK(s.dim({1, 1}) == 2);
    CHECK(s.dim({0, 1}) == 2);
    CHECK(s.dim({1, 0}) == 1);
    CHECK(validate(s).empty());
    CHECK(direct_sum(a, Bicomplex{}) == a);
}

TEST_CASE("shape_complex matches the stated arrow conventions") {
    Bicomplex dot = shape_complex(Shape::dot(1, 1));
    CHECK(dot.total_dim() == 1);
    CHECK(dot.del.empty());
    CHECK(dot.delbar.empty());

    Bicomplex h = shape_complex(Shape::hline(1, 1));
    CHECK(h.dim({1, 1}) == 1);
    CHECK(h.dim({2, 1}) == 1);
    REQUIRE(h.del.count({1, 1}));
    CHECK(h.del.at({1, 1}).entries.at(0).value == Gq(1));
    CHECK(h.delbar.empty());

    Bicomplex sq = shape_complex(Shape::square(0, 0));
    CHECK(sq.total_dim() == 4);
    CHECK(validate(sq).empty());
    CHECK(sq.del.at({0, 0}).entries.at(0).value == Gq(1));
    CHECK(sq.del.at({0, 1}).entries.at(0).value == Gq(1));
    CHECK(sq.delbar.at({0, 0}).entries.at(0).value == Gq(1));
    CHECK(sq.delbar.at({1, 0}).entries.at(0).value == Gq(-1));
}

TEST_CASE("malformed shapes are rejected") {
    CHECK_THROWS_AS(Shape::zigzag({{0, 0}, {2, 0}}), MalformedShape);
    CHECK_THROWS_AS(Shape::zigzag({{0, 0}, {1, 0}, {2, 0}}), MalformedShape);
    CHECK_THROWS_AS(Shape::zigzag({}), MalformedShape);
    CHECK_THROWS_AS(Shape::zigzag({{0, 0}, {0, 0}}), MalformedShape);
    CHECK_NOTHROW(Shape::zigzag({{0, 1}, {0, 0}, {1, 0}}));
}

TEST_CASE("bicomplex JSON roundtrip") {
    testsupport::Rng rng(13);
    for (int iter = 0; iter < 200; ++iter) {
        Bicomplex b = scramble_basis(rng, sum_of_shapes(random_shapes(rng)));
        b.prune();
        json j = bicomplex_to_json(b);
        Bicomplex back = bicomplex_from_json(j);
        back.prune();
        CHECK(back == b);
    }
    CHECK_THROWS_AS(bicomplex_from_json(json::parse("{\"cells\": 3}")), JsonFormatError);
}
