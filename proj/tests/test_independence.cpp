#include <doctest.h>

#include <random>

#include "endim/independence.hpp"
#include "oracles.hpp"

using namespace endim;

namespace {

Shape I(std::int64_t lo, std::int64_t hi) { return Shape::interval(lo, hi); }
Word W(const char* s) { return parse_word(s); }

// Sign vectors of an explicit word set over B = [0, L) with A1 = {0}, A2 = {1}.
std::vector<std::uint32_t> bit_vectors(const std::set<oracle::Word>& words) {
    std::vector<std::uint32_t> v;
    for (const auto& w : words) {
        std::uint32_t m = 0;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i]) m |= 1u << i;
        v.push_back(m);
    }
    return v;
}

}  // namespace

TEST_CASE("shattered family agrees with brute force") {
    std::mt19937 rng(7);
    for (int t = 0; t < 150; ++t) {
        std::size_t m = 1 + rng() % 7;
        std::set<std::uint32_t> s;
        std::size_t k = rng() % (std::size_t{1} << m) + 1;
        for (std::size_t i = 0; i < k; ++i) s.insert(rng() % (1u << m));
        std::vector<std::uint32_t> V(s.begin(), s.end());  // sorted
        Bitset fam = shattered_family(V, m);
        std::size_t best = 0;
        for (std::size_t w = 0; w < fam.size(); ++w) {
            std::set<std::uint32_t> proj;
            for (auto v : V) proj.insert(v & static_cast<std::uint32_t>(w));
            bool sh = proj.size() == (std::size_t{1} << __builtin_popcount(static_cast<unsigned>(w)));
            CHECK(fam[w] == sh);
            if (sh) best = std::max<std::size_t>(best, __builtin_popcount(static_cast<unsigned>(w)));
        }
        CHECK(best == oracle::max_shattered(m, V));
    }
}

TEST_CASE("full shift shatters everything") {
    auto X = LanguageSource::full_shift(2);
    auto P = make_pair(X, I(0, 1), {W("0")}, {W("1")});
    auto r = max_shattered(Factor::trivial(X), P, I(0, 6));
    CHECK(r.shattered);
    CHECK(r.W.size() == 6);
    CHECK(r.achieved == 64);
    // Every certificate pattern lands in the promised side at every coordinate.
    for (std::size_t v = 0; v < r.certificate.size(); ++v) {
        REQUIRE(r.certificate[v] >= 0);
        const Word& p = r.patterns[static_cast<std::size_t>(r.certificate[v])];
        for (std::size_t k = 0; k < r.W.size(); ++k) {
            long i = r.universe.index_of(r.W.points()[k]);
            CHECK(p[static_cast<std::size_t>(i)] == ((v >> k) & 1));
        }
    }
}

TEST_CASE("golden mean shattering matches brute force") {
    auto X = LanguageSource::sft_words(2, {"11"});
    auto P = make_pair(X, I(0, 1), {W("0")}, {W("1")});
    for (std::int64_t L = 1; L <= 9; ++L) {
        auto r = max_shattered(Factor::trivial(X), P, I(0, L));
        auto lang = oracle::sft_language(2, {{1, 1}}, static_cast<std::size_t>(L));
        CHECK(r.W.size() == oracle::max_shattered(static_cast<std::size_t>(L), bit_vectors(lang)));
        CHECK(r.W.size() == static_cast<std::size_t>((L + 1) / 2));
    }
    auto r = max_shattered(Factor::trivial(X), P, I(0, 6));
    CHECK(r.W == Shape(1, {{0, 0}, {2, 0}, {4, 0}}));
    auto bad = independent_along(Factor::trivial(X), P, Shape(1, {{0, 0}, {1, 0}}));
    CHECK_FALSE(bad.shattered);
    CHECK(bad.achieved == 3);
}

TEST_CASE("relative shattering inside fibers") {
    auto X = LanguageSource::full_shift(2);
    Factor f{X, LanguageSource::full_shift(2), BlockCode::xor_code()};
    auto P = make_pair(X, I(0, 1), {W("0")}, {W("1")});
    auto r = max_shattered(f, P, I(0, 6));
    CHECK(r.W.size() == 1);
    CHECK(r.witness_y.has_value());
    auto two = independent_along(f, P, I(0, 2));
    CHECK_FALSE(two.shattered);
    CHECK(two.achieved == 2);
}

TEST_CASE("greedy mode and pair validation") {
    auto X = LanguageSource::full_shift(2);
    auto P = make_pair(X, I(0, 1), {W("0")}, {W("1")});
    auto r = max_shattered(Factor::trivial(X), P, I(0, 24), {}, 8);
    CHECK(r.greedy);
    CHECK(r.W == I(0, 8));
    CHECK(r.shattered);
    CHECK_THROWS_AS(make_pair(X, I(0, 1), {W("0")}, {W("0")}), Error);
    CHECK_THROWS_AS(independent_along(Factor::trivial(X), P, I(0, 21)), Error);
    auto st = standard_cover(X, I(0, 1), {W("0")}, {W("1")});
    auto Q = pair_from_standard(X, st);
    CHECK(Q.A1.allowed == std::vector<Word>{W("0")});
    CHECK(Q.A2.allowed == std::vector<Word>{W("1")});
}

TEST_CASE("sauer bound") {
    CHECK(sauer_bound(8, 10) == 1);
    CHECK(sauer_bound(1, 5) == 0);
    CHECK(sauer_bound(1024, 10) == 10);
    CHECK(sauer_bound(12, 10) == 2);
    for (std::size_t B = 1; B <= 12; ++B)
        for (std::uint64_t num = 1; num <= (std::uint64_t{1} << B); num += 3) {
            std::size_t k = sauer_bound(num, B);
            std::uint64_t below = 0;
            for (std::size_t i = 0; i < k; ++i) below += oracle::binom(B, i);
            CHECK(num > below);
            CHECK(num <= below + oracle::binom(B, k));
        }
}
