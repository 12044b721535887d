#include <doctest.h>

#include <cmath>
#include <random>

#include "endim/subshift.hpp"
#include "oracles.hpp"

using namespace endim;

namespace {

std::vector<oracle::Word> as_words(const std::vector<std::string>& ws) {
    std::vector<oracle::Word> out;
    for (const auto& w : ws) out.push_back(parse_word(w));
    return out;
}

}  // namespace

TEST_CASE("full shift and golden mean languages") {
    auto full = LanguageSource::full_shift(2);
    for (std::int64_t n = 1; n <= 10; ++n) CHECK(language(full, Shape::interval(0, n)).size() == (1u << n));
    auto gm = LanguageSource::sft_words(2, {"11"});
    CHECK(language(gm, Shape::interval(0, 4)).size() == 8);
    for (std::int64_t n = 1; n <= 20; ++n)
        CHECK(language_size(gm, Shape::interval(0, n)).upper.value == oracle::fibonacci(static_cast<unsigned>(n) + 2));
}

TEST_CASE("sft languages match brute force on random systems") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const int A = 2 + static_cast<int>(rng() % 2);
        std::vector<std::string> forb;
        const int nf = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < nf; ++i) {
            std::string w;
            const int len = 1 + static_cast<int>(rng() % 3);
            for (int j = 0; j < len; ++j) w.push_back(static_cast<char>('0' + rng() % static_cast<unsigned>(A)));
            forb.push_back(w);
        }
        auto X = LanguageSource::sft_words(A, forb);
        const std::size_t L = A == 2 ? 8 : 4;
        auto brute = oracle::sft_language(A, as_words(forb), L, A == 2 ? 6 : 5);
        auto t = language(X, Shape::interval(0, static_cast<std::int64_t>(L)));
        std::set<Word> mine(t.rows.begin(), t.rows.end());
        CHECK(mine == brute);
        CHECK(language_size(X, Shape::interval(0, static_cast<std::int64_t>(L))).upper.value == brute.size());
        // translation invariance
        CHECK(language_size(X, Shape::interval(5, 5 + static_cast<std::int64_t>(L))).upper ==
              language_size(X, Shape::interval(0, static_cast<std::int64_t>(L))).upper);
    }
}

TEST_CASE("sft language on scattered shapes is the projection of the hull language") {
    auto gm = LanguageSource::sft_words(2, {"11", "101"});
    Shape W(1, {{0}, {2}, {3}, {7}});
    auto hull = language(gm, Shape::interval(0, 8));
    std::set<Word> proj;
    for (const auto& r : hull.rows) proj.insert({r[0], r[2], r[3], r[7]});
    auto t = language(gm, W);
    CHECK(std::set<Word>(t.rows.begin(), t.rows.end()) == proj);
    CHECK(language_size(gm, W).upper.value == proj.size());
}

TEST_CASE("empty sft language is flagged") {
    auto X = LanguageSource::sft_words(2, {"0", "1"});
    auto t = language(X, Shape::interval(0, 3));
    CHECK(t.empty_language);
    CHECK(t.size() == 0);
}

TEST_CASE("free bits languages") {
    auto sq = LanguageSource::free_bits(IndexSet::power(2));
    auto t = language(sq, Shape::interval(0, 16));
    CHECK(t.mode == Mode::Exact);
    CHECK(t.size() >= 16);
    for (std::uint32_t m = 0; m < 16; ++m) {
        Word w(16, 0);
        const int pos[4] = {0, 1, 4, 9};
        for (int b = 0; b < 4; ++b)
            if ((m >> b) & 1) w[static_cast<std::size_t>(pos[b])] = 1;
        CHECK(t.find(w) >= 0);
    }
    std::vector<long> members;
    for (long j = 0; j * j < 400; ++j) members.push_back(j * j);
    for (long L : {5L, 9L, 16L}) {
        auto brute = oracle::free_bits_language(members, L);
        auto mine = language(sq, Shape::interval(0, L));
        CHECK(std::set<Word>(mine.rows.begin(), mine.rows.end()) == brute);
        CHECK(language_size(sq, Shape::interval(0, L)).upper.value == brute.size());
    }
    // scattered window
    Shape W(1, {{0}, {3}, {8}});
    auto tw = language(sq, W);
    auto full16 = language(sq, Shape::interval(0, 9));
    std::set<Word> proj;
    for (const auto& r : full16.rows) proj.insert({r[0], r[3], r[8]});
    CHECK(std::set<Word>(tw.rows.begin(), tw.rows.end()) == proj);
}

TEST_CASE("free bits over blocks: counter agrees with enumeration") {
    auto S = IndexSet::blocks({{0, 6, 1}, {40, 88, 8}});
    auto X = LanguageSource::free_bits(S);
    std::vector<long> members;
    for (auto m : S.members_in(0, 100)) members.push_back(m);
    FreeBitsCounter ctr(S, 30, Budget{});
    for (long L = 1; L <= 30; ++L) {
        auto brute = oracle::free_bits_language(members, L);
        CHECK(ctr.count(static_cast<std::size_t>(L)).upper.value == brute.size());
    }
    // forced bounds bracket the exact value
    Budget tiny;
    tiny.table = 4;
    FreeBitsCounter b(S, 30, tiny);
    CHECK_FALSE(b.exact());
    for (std::size_t L = 1; L <= 30; ++L) {
        auto r = b.count(L);
        auto e = ctr.count(L);
        CHECK(r.mode == Mode::Bounds);
        CHECK_FALSE(e.upper < r.lower);
        CHECK_FALSE(r.upper < e.upper);
    }
}

TEST_CASE("block codes") {
    auto full = LanguageSource::full_shift(2);
    Pattern p{Shape::interval(0, 4), parse_word("0110")};
    CHECK(apply_code(BlockCode::identity(2), p) == p);
    Pattern y = apply_code(BlockCode::xor_code(), p);
    CHECK(y.shape == Shape::interval(0, 3));
    CHECK(word_string(y.sym) == "101");
    Pattern z = apply_code(BlockCode::constant(2, 0, 2), p);
    CHECK(word_string(z.sym) == "0000");
    CHECK_THROWS_AS(apply_code(BlockCode::xor_code(), p, Shape::interval(0, 4)), Error);
    // composition
    auto xx = compose(BlockCode::xor_code(), BlockCode::xor_code());
    CHECK(xx.window() == Shape::interval(0, 3));
    Pattern q{Shape::interval(0, 6), parse_word("011010")};
    CHECK(apply_code(xx, q).sym == apply_code(BlockCode::xor_code(), apply_code(BlockCode::xor_code(), q)).sym);
    auto rule = BlockCode::from_map(Shape::interval(0, 2), 2, 2, {{"00", "0"}, {"01", "1"}, {"10", "1"}, {"11", "0"}});
    CHECK(rule == BlockCode::xor_code());
}

TEST_CASE("fibers") {
    auto full = LanguageSource::full_shift(2);
    auto id = BlockCode::identity(2);
    Pattern y{Shape::interval(0, 3), parse_word("010")};
    auto f = fiber_patterns(full, id, y, Shape::interval(0, 3));
    REQUIRE(f.size() == 1);
    CHECK(f.rows[0] == y.sym);
    for (std::int64_t n = 1; n <= 6; ++n) {
        Pattern yy{Shape::interval(0, n), Word(static_cast<std::size_t>(n), 1)};
        CHECK(fiber_patterns(full, BlockCode::xor_code(), yy, Shape::interval(0, n + 1)).size() == 2);
    }
    Pattern zz{Shape::interval(0, 2), parse_word("00")};
    CHECK(fiber_patterns(full, BlockCode::constant(2, 0, 2), zz, Shape::interval(0, 3)).size() == 8);
    Pattern bad{Shape::interval(0, 2), parse_word("11")};
    CHECK(fiber_patterns(full, BlockCode::constant(2, 0, 2), bad, Shape::interval(0, 2)).unreachable);
    // fibers partition the language
    auto gm = LanguageSource::sft_words(2, {"11"});
    std::size_t total = 0;
    Shape sh = Shape::interval(0, 6);
    for (const auto& yw : language(full, Shape::interval(0, 5)).rows)
        total += fiber_patterns(gm, BlockCode::xor_code(), Pattern{Shape::interval(0, 5), yw}, sh).size();
    CHECK(total == language(gm, sh).size());
}

TEST_CASE("product systems") {
    auto full = LanguageSource::full_shift(2);
    auto p = product_system({full, full});
    CHECK(p.alphabet() == 4);
    CHECK(language(p, Shape::interval(0, 3)).size() == 64);
    auto fixed = LanguageSource::full_shift(1);
    auto q = product_system({full, fixed});
    CHECK(language(q, Shape::interval(0, 5)).size() == 32);
    auto gm = LanguageSource::sft_words(2, {"11"});
    auto g2 = product_system({gm, gm});
    CHECK(language(g2, Shape::interval(0, 4)).size() == 64);
    CHECK(language_size(g2, Shape::interval(0, 4)).upper.value == 64);
    CHECK_THROWS_AS(product_system({full, LanguageSource::full_shift(2, 2)}), Error);
}

TEST_CASE("points") {
    CHECK(word_string(point_pattern(PointSpec::periodic("0"), Shape::interval(0, 5)).sym) == "00000");
    CHECK(word_string(point_pattern(PointSpec::periodic("01"), Shape::interval(0, 4)).sym) == "0101");
    auto x = PointSpec::finite_support(0, {{Point{0, 0}, 1}});
    CHECK(word_string(point_pattern(x, Shape::interval(-1, 2)).sym) == "010");
}

TEST_CASE("2-D sft languages carry their mode") {
    auto full2 = LanguageSource::full_shift(2, 2);
    auto t = language(full2, Shape::rect({0, 0}, {2, 2}));
    CHECK(t.size() == 16);
    CHECK(t.mode == Mode::Exact);
    // hard-square constraint: no horizontally or vertically adjacent 1s
    Pattern h{Shape(2, {{0, 0}, {1, 0}}), parse_word("11")};
    Pattern v{Shape(2, {{0, 0}, {0, 1}}), parse_word("11")};
    auto hs = LanguageSource::sft(2, 2, {h, v});
    auto u = language(hs, Shape::rect({0, 0}, {2, 2}), 1);
    CHECK(u.mode == Mode::LocalUpper);
    CHECK(u.margin == 1);
    CHECK(u.size() == 7);
}

TEST_CASE("factor soundness and commuting triples") {
    auto full = LanguageSource::full_shift(2);
    CHECK_NOTHROW(validate_factor({full, full, BlockCode::xor_code()}));
    auto gm = LanguageSource::sft_words(2, {"11"});
    CHECK_THROWS_AS(validate_factor({full, gm, BlockCode::identity(2)}), Error);
    FactorTriple T{full, full, full, BlockCode::xor_code(), compose(BlockCode::xor_code(), BlockCode::xor_code()),
                   BlockCode::xor_code()};
    CHECK(T.commutes());
    T.pi_X = BlockCode::xor_code();
    CHECK_FALSE(T.commutes());
}
