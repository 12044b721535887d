#include <doctest.h>

#include "endim/tuples.hpp"

using namespace endim;

namespace {

TupleSpec pair(const char* a, const char* b) { return {{PointSpec::periodic(a), PointSpec::periodic(b)}}; }
Shape I(std::int64_t lo, std::int64_t hi) { return Shape::interval(lo, hi); }

}  // namespace

TEST_CASE("ball covers") {
    CHECK(ball_radius(1) == 0);
    CHECK(ball_radius(2) == 1);
    CHECK(ball_radius(5) == 3);
    auto X = LanguageSource::full_shift(2);
    auto U = ball_cover(X, pair("0", "1"), 1);
    CHECK(U.base == I(-1, 2));
    CHECK(U.size() == 2);
    CHECK(U.elements[0].allowed.size() == 7);
    auto rep = cover_validate(X, U);
    CHECK(rep.standard);
    try {
        ball_cover(X, pair("01", "0110"), 0);
        FAIL("expected degenerate");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Degenerate);
        CHECK(std::string(e.what()).find("points 0 and 1") != std::string::npos);
    }
    auto gm = LanguageSource::sft_words(2, {"11"});
    CHECK_THROWS_AS(ball_cover(gm, pair("0", "1"), 1), Error);
}

TEST_CASE("nested ball covers coarsen with k") {
    auto X = LanguageSource::full_shift(2);
    auto t = pair("0", "1");
    for (std::int64_t n = 1; n <= 6; ++n)
        for (int R = 0; R < 2; ++R) {
            auto a = complexity_absolute(X, ball_cover(X, t, R), I(0, n));
            auto b = complexity_absolute(X, ball_cover(X, t, R + 1), I(0, n));
            CHECK_FALSE(a.lower < b.lower);
        }
}

TEST_CASE("tuple dimension") {
    auto X = LanguageSource::full_shift(2);
    auto F = FolnerSequence::boxes(1, 10);
    auto r = tuple_dimension(Factor::trivial(X), pair("0", "1"), {1, 2}, F, 9);
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].report.estimate.value == doctest::Approx(1).epsilon(0.02));
    CHECK(r.tail > 0.8);
    auto idr = tuple_dimension(Factor::identity(X), pair("0", "1"), {1, 2}, F, 9);
    CHECK(idr.tail == 0);
    Factor x{X, X, BlockCode::xor_code()};
    auto xr = tuple_dimension(x, pair("0", "1"), {1}, F, 9);
    CHECK(xr.tail < 0.05);
}

TEST_CASE("dimension set samples") {
    auto X = LanguageSource::full_shift(2);
    auto ts = sample_tuples(X, 4, 2, 3, 1, 42);
    CHECK(ts.size() == 4);
    auto again = sample_tuples(X, 4, 2, 3, 1, 42);
    for (std::size_t i = 0; i < ts.size(); ++i) CHECK(ts[i].describe() == again[i].describe());
    auto s = dimension_set_sample(Factor::trivial(X), ts, {1}, FolnerSequence::boxes(1, 11), 10, 0.5);
    CHECK(s.values.size() == 4);
    std::size_t binned = 0;
    for (auto h : s.histogram) binned += h;
    for (const auto& v : s.values)
        if (v) CHECK(*v > 0.8);
    CHECK(binned + static_cast<std::size_t>(std::count(s.values.begin(), s.values.end(), std::nullopt)) == 4);
    auto ids = dimension_set_sample(Factor::identity(X), {pair("0", "1")}, {1}, FolnerSequence::boxes(1, 11), 10);
    CHECK_FALSE(ids.all_above);
    CHECK_THROWS_AS(dimension_set_sample(Factor::trivial(X), {}, {1}, FolnerSequence::boxes(1, 5), 4), Error);
}
