#include <doctest.h>

#include <set>

#include "endim/joinings.hpp"

using namespace endim;

namespace {

Word W(const char* s) { return parse_word(s); }
Shape I(std::int64_t lo, std::int64_t hi) { return Shape::interval(lo, hi); }

LanguageSource full2() { return LanguageSource::full_shift(2); }
LanguageSource point() { return LanguageSource::full_shift(1); }

FiberProduct over_trivial(const LanguageSource& X, const LanguageSource& Y) {
    return fiber_product(X, Y, point(), BlockCode::constant(X.alphabet(), 0), BlockCode::constant(Y.alphabet(), 0));
}

Word sym(std::initializer_list<int> xs) {
    Word w;
    for (int x : xs) w.push_back(static_cast<std::uint8_t>(x));
    return w;
}

}  // namespace

TEST_CASE("automata for sft languages") {
    auto gm = LanguageSource::sft_words(2, {"11"});
    CHECK(language_dfa(full2()).size() == 1);
    CHECK(language_dfa(gm).size() == 2);
    auto d = distinguishing_word(language_dfa(gm), language_dfa(full2()));
    REQUIRE(d);
    CHECK(*d == W("11"));
    CHECK_FALSE(distinguishing_word(language_dfa(gm), language_dfa(gm)));
    // XOR image of the full shift is full; of the fixed point 0 it is 0.
    auto x = BlockCode::xor_code();
    CHECK_FALSE(distinguishing_word(language_dfa(full2(), &x), language_dfa(full2())));
    auto zero = LanguageSource::sft_words(2, {"1"});
    auto dz = distinguishing_word(language_dfa(zero, &x), language_dfa(zero));
    CHECK_FALSE(dz);
    CHECK(distinguishing_word(language_dfa(zero, &x), language_dfa(full2())) == std::optional<Word>(W("1")));
    auto prod = as_sft(LanguageSource::product({full2(), point()}));
    CHECK(language_dfa(prod).size() == 1);
    CHECK_THROWS_AS(as_sft(LanguageSource::free_bits(IndexSet::power(2))), Error);
}

TEST_CASE("fiber products match direct filtration") {
    auto fp = over_trivial(full2(), full2());
    CHECK(fp.sft.alphabet() == 4);
    CHECK(language(fp.sft, I(0, 3)).size() == 64);

    auto diag = fiber_product(full2(), full2(), full2(), BlockCode::identity(2), BlockCode::identity(2));
    auto Ld = language(diag.sft, I(0, 5));
    CHECK(Ld.size() == 32);
    for (const auto& r : Ld.rows)
        for (auto c : r) CHECK(c / 2 == c % 2);

    auto xr = fiber_product(full2(), full2(), full2(), BlockCode::identity(2), BlockCode::xor_code());
    for (std::size_t L = 1; L <= 6; ++L) {
        std::set<Word> expect;
        for (std::uint32_t y = 0; y < (1u << (L + 1)); ++y) {
            Word w(L);
            for (std::size_t i = 0; i < L; ++i) {
                int yi = y >> i & 1, yn = y >> (i + 1) & 1;
                w[i] = static_cast<std::uint8_t>((yi ^ yn) * 2 + yi);
            }
            expect.insert(w);
        }
        auto got = language(xr.sft, I(0, static_cast<std::int64_t>(L)));
        CHECK(std::set<Word>(got.rows.begin(), got.rows.end()) == expect);
    }
    CHECK_THROWS_AS(fiber_product(full2(), full2(), full2(), BlockCode::identity(2), BlockCode::constant(2, 0)),
                    Error);
}

TEST_CASE("joining checks") {
    auto fp = over_trivial(full2(), full2());
    auto self = joining_check(fp, {{}, 1});
    CHECK(self.is_joining);
    CHECK_FALSE(self.is_proper);
    auto diag = joining_check(fp, {{sym({1}), sym({2})}, 1});
    CHECK(diag.is_joining);
    CHECK(diag.is_proper);
    REQUIRE(diag.proper_witness);
    CHECK(*diag.proper_witness == sym({1}));
    auto no00 = joining_check(fp, {{sym({0})}, 1});
    CHECK(no00.is_joining);
    CHECK(no00.is_proper);
    // Killing every pair with x = 1 leaves a projection missing 1.
    auto bad = joining_check(fp, {{sym({2}), sym({3})}, 1});
    CHECK_FALSE(bad.is_joining);
    REQUIRE(bad.missing_X);
    CHECK(*bad.missing_X == W("1"));
    auto empty = joining_check(fp, {{sym({0}), sym({1}), sym({2}), sym({3})}, 1});
    CHECK_FALSE(empty.nonempty);
    CHECK(pair_word(sym({3, 1}), 2) == "(1,1)(0,1)");
}

TEST_CASE("proper joining search") {
    auto ff = proper_joining_search(over_trivial(full2(), full2()), 2);
    REQUIRE(ff.found);
    CHECK(ff.window == 1);
    CHECK(ff.witness.forbidden == std::vector<Word>{sym({1}), sym({2})});

    auto fx = proper_joining_search(over_trivial(full2(), point()), 2);
    CHECK_FALSE(fx.found);
    CHECK(fx.exhausted);
    CHECK(fx.window == 2);

    auto fg = over_trivial(full2(), LanguageSource::sft_words(2, {"11"}));
    auto g = proper_joining_search(fg, 2);
    REQUIRE(g.found);
    auto again = joining_check(fg, g.witness);
    CHECK(again.is_joining);
    CHECK(again.is_proper);

    Budget tiny;
    tiny.nodes = 3;
    auto part = proper_joining_search(over_trivial(full2(), full2()), 2, tiny);
    CHECK_FALSE(part.found);
    CHECK_FALSE(part.exhausted);
    CHECK_FALSE(part.frontier.empty());
}

TEST_CASE("factor probes") {
    auto id = Factor::identity(full2());
    CHECK_FALSE(factor_probe(id, ProbeKind::Minimal, 2).violation);
    CHECK_FALSE(factor_probe(id, ProbeKind::Open, 2).violation);
    auto prodX = LanguageSource::product({full2(), point()});
    Factor proj{prodX, point(), BlockCode::projection({2, 1}, 1)};
    auto m = factor_probe(proj, ProbeKind::Minimal, 1);
    CHECK(m.violation);
    CHECK(m.verdict == "violation found");
    Factor x{full2(), full2(), BlockCode::xor_code()};
    auto o = factor_probe(x, ProbeKind::Open, 2);
    CHECK_FALSE(o.violation);
    CHECK(o.verdict == "no violation up to 2");
}
