#pragma once

#include <cstdint>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "endim/subshift.hpp"

namespace endim {

using Bitset = boost::dynamic_bitset<std::uint64_t>;

struct ClopenSet {
    Shape base;
    std::vector<Word> allowed;  // sorted, distinct

    bool contains(const Word& w) const;
    bool empty() const { return allowed.empty(); }
};

struct ClopenCover {
    enum class Kind { General, Partition, Standard };

    Shape base;
    std::vector<ClopenSet> elements;
    Kind kind = Kind::General;

    std::size_t size() const { return elements.size(); }
};

const char* cover_kind_name(ClopenCover::Kind k);

ClopenCover make_cover(const Shape& base, const std::vector<std::vector<Word>>& elements);
// One element per admissible word on base.
ClopenCover cylinder_partition(const LanguageSource& X, const Shape& base);
// {X \ A1, X \ A2} with A1, A2 unions of cylinders on base.
ClopenCover standard_cover(const LanguageSource& X, const Shape& base, const std::vector<Word>& A1,
                           const std::vector<Word>& A2);
ClopenCover join(const LanguageSource& X, const ClopenCover& U, const ClopenCover& V);
ClopenCover translate(const ClopenCover& U, const Point& g);
// code^{-1} V as a cover of the domain.
ClopenCover pullback(const LanguageSource& X, const BlockCode& code, const ClopenCover& V);
// Every element of V sits inside some element of U.
bool refines(const LanguageSource& X, const ClopenCover& V, const ClopenCover& U);

struct CoverReport {
    ClopenCover::Kind kind = ClopenCover::Kind::General;
    bool partition = false;
    bool standard = false;
    // Cover restricted to the language, with classification applied.
    ClopenCover normalized;
};

CoverReport cover_validate(const LanguageSource& X, const ClopenCover& U);

struct SetCoverResult {
    std::size_t lower = 0;
    std::size_t upper = 0;
    bool exact = true;
    std::uint64_t nodes = 0;
    std::vector<std::size_t> chosen;
};

SetCoverResult min_subcover(std::size_t universe, const std::vector<Bitset>& sets,
                            std::uint64_t node_budget = 1'000'000);

struct ComplexityResult {
    Count lower = Count::of(1);
    Count upper = Count::of(1);
    Mode mode = Mode::Exact;
    Shape y_shape;
    Word argmax_y;
    std::size_t fibers = 1;
    bool budget_hit = false;

    bool exact() const { return mode == Mode::Exact; }
};

// N of the join of g^{-1}U over g in F, maximized over fibers of f.code.
ComplexityResult complexity_relative(const Factor& f, const ClopenCover& U, const Shape& F,
                                     const Budget& budget = {});
ComplexityResult complexity_absolute(const LanguageSource& X, const ClopenCover& U, const Shape& F,
                                     const Budget& budget = {});

// Same quantity with the partition fast path disabled; used for oracle agreement.
ComplexityResult complexity_setcover_only(const Factor& f, const ClopenCover& U, const Shape& F,
                                          const Budget& budget = {});

struct ComplexityRow {
    std::size_t n = 0;
    std::size_t size = 0;
    Count lower, upper;
    Mode mode = Mode::Exact;
};

struct ComplexityCurve {
    std::vector<ComplexityRow> rows;
    bool exact() const;
};

}  // namespace endim
