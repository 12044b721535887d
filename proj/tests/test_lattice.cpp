#include <doctest.h>

#include <cmath>

#include "endim/lattice.hpp"

using namespace endim;

TEST_CASE("box folner sequences") {
    auto f = FolnerSequence::boxes(1, 3);
    CHECK(f.shape(0) == Shape::interval(0, 1));
    CHECK(f.shape(1) == Shape::interval(0, 2));
    CHECK(f.shape(2) == Shape::interval(0, 3));
    auto g = FolnerSequence::boxes(2, 2);
    CHECK(g.shape(0) == Shape(2, {{0, 0}}));
    CHECK(g.shape(1) == Shape::rect({0, 0}, {2, 2}));
    auto h = FolnerSequence::boxes(1, 100);
    for (std::size_t n = 0; n < 100; ++n) CHECK(h.shape_size(n) == n + 1);
    CHECK_THROWS_AS(FolnerSequence::boxes(3, 2), Error);
    CHECK(f.shape(0).contains(Point{}));
}

TEST_CASE("explicit folner lists are cumulative unions") {
    auto f = FolnerSequence::explicit_list(1, {Shape::interval(0, 2), Shape::interval(5, 6), Shape::interval(0, 1),
                                               Shape::interval(0, 9)});
    REQUIRE(f.count() == 3);
    CHECK(f.shape(1) == Shape(1, {{0}, {1}, {5}}));
    CHECK(f.shape(2).size() == 9);
    CHECK(f.source_index() == std::vector<std::size_t>{0, 1, 3});
}

TEST_CASE("shape products") {
    CHECK(shape_product(Shape::interval(0, 2), Shape::interval(0, 3)) == Shape::interval(0, 4));
    Shape F(1, {{3}, {7}, {9}});
    CHECK(shape_product(Shape::interval(0, 1), F) == F);
    CHECK(shape_product(Shape::rect({0, 0}, {2, 2}), Shape::rect({0, 0}, {2, 2})) == Shape::rect({0, 0}, {3, 3}));
    CHECK_THROWS_AS(shape_product(Shape::interval(0, 1), Shape::rect({0, 0}, {1, 1})), Error);
    // associativity and monotonicity on a small family
    Shape A(1, {{0}, {2}}), B(1, {{1}, {4}}), C(1, {{-1}, {0}});
    CHECK(shape_product(shape_product(A, B), C) == shape_product(A, shape_product(B, C)));
    CHECK(is_subset(shape_product(A, B), shape_product(shape_union(A, C), B)));
}

TEST_CASE("invariance defects are exact rationals") {
    for (std::int64_t n = 1; n <= 40; ++n) {
        CHECK(invariance_defect(Shape::interval(0, 2), Shape::interval(0, n)) == Rational(1, n));
        CHECK(invariance_defect(Shape::interval(0, 1), Shape::interval(0, n)) == Rational(0));
        CHECK(invariance_defect(Shape::rect({0, 0}, {2, 2}), Shape::rect({0, 0}, {n, n})) ==
              Rational(2 * n + 1, n * n));
    }
    CHECK_THROWS_AS(invariance_defect(Shape::interval(0, 1), Shape::empty(1)), Error);
    // Folner property: defects decrease along boxes for a fixed K
    Shape K(1, {{-2}, {0}, {3}});
    auto f = FolnerSequence::boxes(1, 60);
    Rational prev = invariance_defect(K, f.shape(0));
    for (std::size_t n = 1; n < 60; ++n) {
        Rational d = invariance_defect(K, f.shape(n));
        CHECK(d <= prev);
        prev = d;
    }
    CHECK(prev < Rational(1, 10));
}

TEST_CASE("index sets and counts") {
    auto sq = IndexSet::power(2);
    auto f = FolnerSequence::boxes(1, 64);
    auto c = index_counts(sq, f, 15);
    CHECK(c.rows.back().count == 4);
    CHECK(sq.members_in(0, 16) == std::vector<std::int64_t>{0, 1, 4, 9});
    CHECK(c.unbounded);
    auto full = index_counts(IndexSet::full(), f, 30);
    for (const auto& r : full.rows) {
        CHECK(r.count == r.size);
        CHECK(r.density == Rational(1));
    }
    auto none = index_counts(IndexSet::empty_set(), f, 30);
    for (const auto& r : none.rows) CHECK(r.count == 0);
    CHECK_FALSE(none.unbounded);
    for (const auto& r : c.rows) {
        CHECK(r.density >= Rational(0));
        CHECK(r.density <= Rational(1));
    }
    auto pw = IndexSet::power(1.5);
    for (std::int64_t j = 0; j < 50; ++j) {
        auto v = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(j), 1.5)));
        CHECK(pw.contains(v));
    }
    auto bl = IndexSet::blocks({{0, 6, 1}, {100, 140, 8}});
    CHECK(bl.members_in(0, 200) == std::vector<std::int64_t>{0, 1, 2, 3, 4, 5, 100, 108, 116, 124, 132});
    CHECK(bl.contains(116));
    CHECK_FALSE(bl.contains(117));
    CHECK(*bl.max_member() == 132);
}

TEST_CASE("erosion") {
    CHECK(erode(Shape::interval(0, 5), Shape::interval(0, 2)) == Shape::interval(0, 4));
    CHECK(erode(Shape(1, {{0}, {1}, {4}, {9}}), Shape::interval(0, 2)) == Shape(1, {{0}}));
}
