#include <doctest.h>

#include <random>

#include "endim/cover.hpp"
#include "oracles.hpp"

using namespace endim;

namespace {

Shape I(std::int64_t lo, std::int64_t hi) { return Shape::interval(lo, hi); }
Word W(const char* s) { return parse_word(s); }

ClopenCover symbol_partition(const LanguageSource& X) { return cylinder_partition(X, I(0, 1)); }

}  // namespace

TEST_CASE("cover validation") {
    auto full = LanguageSource::full_shift(2);
    auto part = cover_validate(full, symbol_partition(full));
    CHECK(part.partition);
    CHECK(part.kind == ClopenCover::Kind::Partition);
    auto st = cover_validate(full, standard_cover(full, I(0, 2), {W("11")}, {W("00")}));
    CHECK(st.kind == ClopenCover::Kind::Standard);
    CHECK_FALSE(st.partition);
    CHECK_THROWS_AS(cover_validate(full, make_cover(I(0, 1), {{W("0")}})), Error);
    try {
        cover_validate(full, make_cover(I(0, 1), {{W("0")}}));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CoverageGap);
        CHECK(std::string(e.what()).find("pattern 1") != std::string::npos);
    }
    CHECK_THROWS_AS(standard_cover(full, I(0, 2), {W("11")}, {W("11")}), Error);
}

TEST_CASE("min_subcover small cases") {
    auto bs = [](std::size_t n, std::initializer_list<std::size_t> xs) {
        Bitset b(n);
        for (auto x : xs) b.set(x);
        return b;
    };
    auto r = min_subcover(3, {bs(3, {0, 1}), bs(3, {1, 2}), bs(3, {0, 2})});
    CHECK(r.exact);
    CHECK(r.upper == 2);
    CHECK(min_subcover(1, {bs(1, {0}), bs(1, {0})}).upper == 1);
    CHECK_THROWS_AS(min_subcover(3, {bs(3, {0, 1})}), Error);
}

TEST_CASE("min_subcover agrees with exhaustive search") {
    std::mt19937_64 rng(2024);
    int mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 12;
        const std::size_t m = 1 + rng() % 30;
        std::vector<std::uint64_t> masks;
        std::vector<Bitset> sets;
        for (std::size_t s = 0; s < m; ++s) {
            std::uint64_t mk = 0;
            for (std::size_t e = 0; e < n; ++e)
                if (rng() % 4 == 0) mk |= std::uint64_t{1} << e;
            masks.push_back(mk);
        }
        for (std::size_t e = 0; e < n; ++e) masks[rng() % m] |= std::uint64_t{1} << e;
        for (auto mk : masks) {
            Bitset b(n);
            for (std::size_t e = 0; e < n; ++e)
                if ((mk >> e) & 1) b.set(e);
            sets.push_back(b);
        }
        auto r = min_subcover(n, sets);
        if (!r.exact || r.upper != oracle::set_cover(n, masks)) ++mismatches;
        Bitset u(n);
        for (auto c : r.chosen) u |= sets[c];
        CHECK(u.all());
        CHECK(r.chosen.size() == r.upper);
    }
    CHECK(mismatches == 0);
}

TEST_CASE("complexity_absolute examples") {
    auto full = LanguageSource::full_shift(2);
    auto P = symbol_partition(full);
    for (std::int64_t n = 1; n <= 16; ++n) {
        auto r = complexity_absolute(full, P, I(0, n));
        CHECK(r.exact());
        CHECK(r.upper.value == (std::uint64_t{1} << n));
    }
    auto gm = LanguageSource::sft_words(2, {"11"});
    CHECK(complexity_absolute(gm, symbol_partition(gm), I(0, 4)).upper.value == 8);
    auto st = standard_cover(full, I(0, 1), {W("0")}, {W("1")});
    CHECK(complexity_absolute(full, st, I(0, 2)).upper.value == 4);
    CHECK(complexity_setcover_only(Factor::trivial(full), st, I(0, 2)).upper.value == 4);
}

TEST_CASE("partition fast path agrees with the set-cover path") {
    auto gm = LanguageSource::sft_words(2, {"11"});
    auto U = cylinder_partition(gm, I(0, 2));
    for (std::int64_t n = 1; n <= 6; ++n) {
        auto a = complexity_relative(Factor::trivial(gm), U, I(0, n));
        auto b = complexity_setcover_only(Factor::trivial(gm), U, I(0, n));
        CHECK(a.upper == b.upper);
        CHECK(b.exact());
    }
    auto full = LanguageSource::full_shift(2);
    auto V = make_cover(I(0, 2), {{W("00"), W("01")}, {W("10"), W("11")}});
    for (std::int64_t n = 1; n <= 5; ++n) {
        auto f = Factor{full, full, BlockCode::xor_code()};
        CHECK(complexity_relative(f, V, I(0, n)).upper == complexity_setcover_only(f, V, I(0, n)).upper);
    }
}

TEST_CASE("complexity_relative examples") {
    auto full = LanguageSource::full_shift(2);
    auto P = symbol_partition(full);
    auto st = standard_cover(full, I(0, 2), {W("11")}, {W("00")});
    for (std::int64_t n = 1; n <= 6; ++n) {
        CHECK(complexity_relative(Factor::identity(full), P, I(0, n)).upper.value == 1);
        CHECK(complexity_relative(Factor::identity(full), st, I(0, n)).upper.value == 1);
        CHECK(complexity_relative(Factor::trivial(full), st, I(0, n)).upper ==
              complexity_absolute(full, st, I(0, n)).upper);
    }
    Factor x{full, full, BlockCode::xor_code()};
    for (std::int64_t n = 1; n <= 16; ++n) {
        auto r = complexity_relative(x, P, I(0, n));
        CHECK(r.upper.value == 2);
        CHECK(r.exact());
    }
}

TEST_CASE("translation invariance of complexity") {
    auto gm = LanguageSource::sft_words(2, {"11"});
    auto st = standard_cover(gm, I(0, 2), {W("00")}, {W("01"), W("10")});
    for (std::int64_t n = 1; n <= 5; ++n)
        CHECK(complexity_absolute(gm, st, I(0, n)).upper ==
              complexity_absolute(gm, translate(st, Point{3, 0}), I(0, n)).upper);
}

TEST_CASE("cover operations") {
    auto full = LanguageSource::full_shift(2);
    auto P = symbol_partition(full);
    auto st = standard_cover(full, I(0, 2), {W("11")}, {W("00")});
    auto J = join(full, P, st);
    CHECK(refines(full, J, P));
    CHECK(refines(full, J, st));
    CHECK_FALSE(refines(full, st, P));
    auto pb = pullback(full, BlockCode::xor_code(), P);
    CHECK(pb.base == I(0, 2));
    CHECK(cover_validate(full, pb).partition);
}
