#include <doctest.h>

#include <cmath>

#include "endim/dimension.hpp"

using namespace endim;

namespace {

Shape I(std::int64_t lo, std::int64_t hi) { return Shape::interval(lo, hi); }
Word W(const char* s) { return parse_word(s); }
const double LN2 = std::log(2.0);

ClopenCover symbols(const LanguageSource& X) { return cylinder_partition(X, I(0, 1)); }

std::vector<GrowthPoint> synthetic(std::size_t N, double (*v)(double)) {
    std::vector<GrowthPoint> g;
    for (std::size_t n = 0; n < N; ++n) {
        double s = static_cast<double>(n + 1);
        g.push_back({n, s, v(s), v(s)});
    }
    return g;
}

IndexSet squares() { return IndexSet::power(2); }

}  // namespace

TEST_CASE("critical exponent on synthetic curves") {
    auto e = critical_exponent(synthetic(200, [](double s) { return std::sqrt(s); }));
    CHECK(e.value == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(e.upper == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(e.lower == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(e.scan_upper == doctest::Approx(0.5).epsilon(0.02));
    CHECK(e.scan_lower == doctest::Approx(0.5).epsilon(0.02));
    auto c = critical_exponent(synthetic(100, [](double) { return 3.0; }));
    CHECK(c.value == doctest::Approx(0));
    CHECK_FALSE(c.degenerate);
    auto z = critical_exponent(synthetic(100, [](double) { return 0.0; }));
    CHECK(z.degenerate);
    CHECK(z.value == 0);
    auto lin = critical_exponent(synthetic(100, [](double s) { return s * LN2; }));
    CHECK(lin.value == doctest::Approx(1));
    // Bounds rows estimate both curves.
    auto g = synthetic(100, [](double s) { return std::sqrt(s); });
    for (auto& p : g) p.hi = p.size;
    auto b = critical_exponent(g);
    REQUIRE(b.value_hi);
    CHECK(*b.value_hi == doctest::Approx(1));
    CHECK(b.value == doctest::Approx(0.5));
}

TEST_CASE("complexity curves: fast path agrees with per-row computation") {
    auto check = [](const LanguageSource& X, const ClopenCover& U, std::size_t n_max) {
        auto F = FolnerSequence::boxes(1, n_max + 1);
        auto c = complexity_curve(Factor::trivial(X), U, F, n_max);
        REQUIRE(c.rows.size() == n_max + 1);
        for (std::size_t n = 0; n <= n_max; ++n) {
            auto r = complexity_setcover_only(Factor::trivial(X), U, F.shape(n));
            CHECK(c.rows[n].lower == r.lower);
            CHECK(c.rows[n].size == n + 1);
        }
    };
    check(LanguageSource::full_shift(2), symbols(LanguageSource::full_shift(2)), 10);
    auto gm = LanguageSource::sft_words(2, {"11"});
    check(gm, symbols(gm), 12);
    check(gm, cylinder_partition(gm, I(0, 2)), 10);
    auto fb = LanguageSource::free_bits(squares());
    check(fb, symbols(fb), 16);
}

TEST_CASE("dimension of standard examples") {
    auto full = LanguageSource::full_shift(2);
    auto F = FolnerSequence::boxes(1, 65);
    auto d = cover_dimension(Factor::trivial(full), symbols(full), F, 64);
    CHECK(d.curve.exact());
    CHECK(d.curve.rows[10].lower == Count::pow2(11));
    CHECK(d.estimate.value == doctest::Approx(1).epsilon(0.01));

    auto gm = LanguageSource::sft_words(2, {"11"});
    auto g = cover_dimension(Factor::trivial(gm), symbols(gm), F, 64);
    CHECK(g.estimate.value > 0.9);

    Factor x{full, full, BlockCode::xor_code()};
    auto r = cover_dimension(x, symbols(full), FolnerSequence::boxes(1, 17), 16);
    for (const auto& row : r.curve.rows) CHECK(row.lower == Count::of(2));
    CHECK(r.estimate.value == doctest::Approx(0).epsilon(1e-9));
    CHECK(r.estimate.upper < 0.05);

    auto fb = LanguageSource::free_bits(squares());
    auto s = cover_dimension(Factor::trivial(fb), symbols(fb), F, 64);
    CHECK(s.curve.exact());
    CHECK(s.estimate.value >= 0.4);
    CHECK(s.estimate.value <= 0.6);
    CHECK(s.estimate.lower <= s.estimate.value);
    CHECK(s.estimate.upper >= s.estimate.value);
}

TEST_CASE("system dimension over standard covers") {
    auto full = LanguageSource::full_shift(2);
    auto fam = standard_cover_family(full, 2);
    CHECK(fam.size() == 1 + 6);
    auto s = system_dimension(Factor::trivial(full), fam, FolnerSequence::boxes(1, 11), 10);
    CHECK(s.upper >= 0.9);
    CHECK(s.reports.size() == fam.size());
    CHECK_THROWS_AS(system_dimension(Factor::trivial(full), {}, FolnerSequence::boxes(1, 5), 4), Error);
}

TEST_CASE("subset dimension") {
    auto F = FolnerSequence::boxes(1, 4097);
    auto sq = subset_dimension(squares(), F, 4096);
    CHECK(sq.estimate.value == doctest::Approx(0.5).epsilon(0.05 / 0.5));
    auto full = subset_dimension(IndexSet::non_negative(), F, 4096);
    CHECK(full.estimate.value == doctest::Approx(1));
    // Finite-range slope of log2 n is about 1/ln n; stays well under the squares.
    auto pw = subset_dimension(IndexSet::geometric(2), F, 4096);
    CHECK(pw.estimate.value < 0.2);
    auto fin = subset_dimension(IndexSet::explicit_points(1, {{3, 0}, {9, 0}}), F, 256);
    CHECK(fin.estimate.degenerate);
    CHECK(fin.estimate.value == 0);
}

TEST_CASE("generating-set tests") {
    auto full = LanguageSource::full_shift(2);
    auto F = FolnerSequence::boxes(1, 65);
    auto g = genset_test(IndexSet::non_negative(), Factor::trivial(full), symbols(full), F, 64);
    for (const auto& r : g.rows) CHECK(*r.ratio == doctest::Approx(LN2));
    CHECK(g.in_E);
    CHECK(g.in_P);
    Factor x{full, full, BlockCode::xor_code()};
    auto gx = genset_test(IndexSet::non_negative(), x, symbols(full), FolnerSequence::boxes(1, 17), 16);
    // Fibers carry two patterns: ratio ln 2 / |F_n| decays but stays above tau on this range.
    for (const auto& r : gx.rows) CHECK(*r.ratio == doctest::Approx(LN2 / static_cast<double>(r.count)));
    CHECK(gx.limsup <= LN2 / 8);
    auto gxt = genset_test(IndexSet::non_negative(), x, symbols(full), FolnerSequence::boxes(1, 17), 16, 0.1);
    CHECK_FALSE(gxt.in_E);
    CHECK_FALSE(gxt.in_P);
    CHECK(gx.liminf <= gx.limsup);
    auto gs = genset_test(squares(), Factor::trivial(full), symbols(full), F, 64);
    CHECK(gs.liminf == doctest::Approx(LN2));
    CHECK_THROWS_AS(genset_test(IndexSet::empty_set(), Factor::trivial(full), symbols(full), F, 8), Error);
}

TEST_CASE("interpolated sets") {
    auto F = FolnerSequence::boxes(1, 1025);
    auto r = construct_interpolated_set(IndexSet::geometric(2), 0.5, F, 1024);
    for (const auto& row : r.rows) CHECK(row.count >= row.target);
    CHECK(r.measured_lower >= 0.45);
    CHECK(r.meets_alpha);
    CHECK(r.estimate.value == doctest::Approx(0.5).epsilon(0.1));
    auto one = construct_interpolated_set(IndexSet::geometric(2), 1.0, F, 256);
    CHECK(one.measured_lower == doctest::Approx(1));
    CHECK(one.estimate.lower == doctest::Approx(1).epsilon(0.01));
    auto dense = construct_interpolated_set(IndexSet::non_negative(), 0.3, F, 256);
    CHECK(dense.estimate.value == doctest::Approx(1).epsilon(0.01));
    CHECK_THROWS_AS(construct_interpolated_set(IndexSet::geometric(2), 0.0, F, 16), Error);
}

TEST_CASE("positive-upper construction under both readings") {
    auto full = LanguageSource::full_shift(2);
    auto F = FolnerSequence::boxes(1, 1025);
    auto rep = genset_test(IndexSet::non_negative(), Factor::trivial(full), symbols(full),
                           FolnerSequence::boxes(1, 33), 32);
    auto r = construct_pos_upper_set(IndexSet::non_negative(), rep, F, 1024);
    CHECK(r.scales == std::vector<std::size_t>{1, 3, 7, 15, 31, 63, 127, 255, 511, 1023});
    // S itself sits inside both readings, so both are full.
    CHECK(r.upper_A == doctest::Approx(1));
    CHECK(r.upper_B == doctest::Approx(1));
    CHECK(r.matches == "neither");

    IndexSet evens = IndexSet::blocks({{0, 1 << 20, 2}});
    auto re = construct_pos_upper_set(evens, rep, F, 1024);
    CHECK(re.scales.size() >= 5);
    CHECK(re.upper_A == doctest::Approx(1));
    CHECK(re.upper_B >= 0.5);
    CHECK(re.upper_B <= 0.56);
    CHECK(re.matches == "B");

    CHECK_THROWS_AS(construct_pos_upper_set(IndexSet::geometric(2), rep, F, 1024), Error);
    GenSetReport no;
    CHECK_THROWS_AS(construct_pos_upper_set(IndexSet::non_negative(), no, F, 1024), Error);
}

TEST_CASE("theorem construction") {
    auto full = LanguageSource::full_shift(2);
    auto U = standard_cover(full, I(0, 1), {W("0")}, {W("1")});
    auto t = construct_thm_genset(Factor::trivial(full), U, FolnerSequence::boxes(1, 101), 100);
    REQUIRE(t.constructed);
    REQUIRE(t.annuli.size() >= 2);
    CHECK(t.annuli[0].W == I(2, 6));
    for (const auto& a : t.annuli) {
        CHECK(a.certified);
        CHECK_FALSE(a.N_W < Count::pow2(a.W.size()));
    }
    CHECK(t.check.liminf == doctest::Approx(LN2));
    CHECK(t.acceptance);

    Factor x{full, full, BlockCode::xor_code()};
    auto tx = construct_thm_genset(x, U, FolnerSequence::boxes(1, 17), 16);
    CHECK_FALSE(tx.constructed);
    CHECK_FALSE(tx.reason.empty());
    CHECK_THROWS_AS(construct_thm_genset(Factor::trivial(full), cylinder_partition(full, I(0, 2)),
                                         FolnerSequence::boxes(1, 9), 8),
                    Error);
}

TEST_CASE("minimizing subsequence") {
    // ln N oscillating between sqrt(n) and log n on dyadic blocks.
    std::vector<GrowthPoint> osc;
    for (std::size_t n = 0; n < 4096; ++n) {
        double s = static_cast<double>(n + 1);
        bool slow = static_cast<int>(std::log2(s)) % 2 == 0;
        double v = slow ? std::log(s) + 1 : std::sqrt(s);
        osc.push_back({n, s, v, v});
    }
    auto r = folner_minimizing_subsequence(osc, 0.3);
    CHECK(r.within_alpha);
    CHECK(r.sub.upper <= 0.3);
    CHECK(r.full.upper >= 0.45);

    auto full = LanguageSource::full_shift(2);
    auto c = complexity_curve(Factor::trivial(full), symbols(full), FolnerSequence::boxes(1, 65), 64);
    auto f = folner_minimizing_subsequence(growth_of(c), 0.3);
    CHECK(f.fallback);
    CHECK(f.sub.value == doctest::Approx(1).epsilon(0.01));
    CHECK_FALSE(f.within_alpha);

    IndexSet S = IndexSet::blocks({{0, 6, 1}, {1000, 1096, 8}});
    auto fb = LanguageSource::free_bits(S);
    auto rc = complexity_curve(Factor::trivial(fb), symbols(fb), FolnerSequence::boxes(1, 1024), 1023);
    auto rm = folner_minimizing_subsequence(growth_of(rc), 0.3);
    CHECK(rm.full.upper - rm.sub.upper >= 0.2);
    CHECK(rm.within_alpha);
}
