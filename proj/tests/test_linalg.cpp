#include "solvcohom/linalg.hpp"

#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace solvcohom;

namespace {

Mat random_mat(testsupport::Rng& rng, int r, int c) {
    Mat m(r, c);
    std::uniform_int_distribution<int> entry(-3, 3);
    std::uniform_int_distribution<int> sparse(0, 2);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (sparse(rng) == 0) m.at(i, j) = Gq(entry(rng), entry(rng));
    return m;
}

}  // namespace

TEST_CASE("kernel and rank are consistent") {
    testsupport::Rng rng(99);
    for (int iter = 0; iter < 500; ++iter) {
        int r = 1 + iter % 5, c = 1 + (iter / 5) % 5;
        Mat m = random_mat(rng, r, c);
        Mat k = kernel_basis(m);
        CHECK(rank(m) + k.cols == c);          // rank-nullity
        CHECK((m * k).is_zero());              // kernel columns are killed
        CHECK(rank(k) == k.cols);              // and independent
    }
}

TEST_CASE("solve finds exact solutions") {
    testsupport::Rng rng(100);
    for (int iter = 0; iter < 500; ++iter) {
        int r = 1 + iter % 4, c = 1 + (iter / 4) % 4;
        Mat m = random_mat(rng, r, c);
        std::vector<Gq> x = testsupport::random_vector(rng, c);
        std::vector<Gq> b(r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) b[i] += m.at(i, j) * x[j];
        auto sol = solve(m, b);
        REQUIRE(sol);
        for (int i = 0; i < r; ++i) {
            Gq acc;
            for (int j = 0; j < c; ++j) acc += m.at(i, j) * (*sol)[j];
            CHECK(acc == b[i]);
        }
    }
}

TEST_CASE("solve rejects inconsistent systems") {
    Mat m(2, 1);
    m.at(0, 0) = Gq(1);
    CHECK_FALSE(solve(m, {Gq(0), Gq(1)}));
    CHECK(solve(m, {Gq(5), Gq(0)}));
}

TEST_CASE("extending_columns picks a complement") {
    testsupport::Rng rng(101);
    for (int iter = 0; iter < 200; ++iter) {
        Mat base = random_mat(rng, 5, 2);
        Mat cand = random_mat(rng, 5, 4);
        auto picked = extending_columns(base, cand);
        CHECK(static_cast<int>(picked.size()) == rank(hstack(base, cand)) - rank(base));
        Mat chosen = columns(cand, picked);
        CHECK(rank(hstack(base, chosen)) == rank(base) + chosen.cols);
    }
}

TEST_CASE("intersection dimension via rank formula") {
    Mat a(3, 1), b(3, 2);
    a.at(0, 0) = Gq(1);
    b.at(0, 0) = Gq(1);
    b.at(1, 1) = Gq(1);
    CHECK(intersection_dim(a, b) == 1);
    Mat c(3, 1);
    c.at(2, 0) = Gq(1);
    CHECK(intersection_dim(a, c) == 0);
}
