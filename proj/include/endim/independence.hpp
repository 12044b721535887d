#pragma once

#include <optional>

#include "endim/cover.hpp"

namespace endim {

struct IndependencePair {
    ClopenSet A1, A2;
};

// A1, A2 intersected with the language on base; must be disjoint and non-empty.
IndependencePair make_pair(const LanguageSource& X, const Shape& base, const std::vector<Word>& A1,
                           const std::vector<Word>& A2);
// Complements of the two elements of a standard cover.
IndependencePair pair_from_standard(const LanguageSource& X, const ClopenCover& U);

struct ShatterResult {
    Shape W;
    std::optional<Word> witness_y;
    std::uint64_t achieved = 0;
    bool shattered = false;
    bool greedy = false;
    // For each sign vector (bit k set when W_k lands in A2) the index of a
    // realizing pattern in `patterns`, or -1.
    std::vector<long> certificate;
    Shape universe;
    std::vector<Word> patterns;
    Mode mode = Mode::Exact;
};

ShatterResult independent_along(const Factor& f, const IndependencePair& pair, const Shape& W,
                                const Budget& budget = {});
ShatterResult max_shattered(const Factor& f, const IndependencePair& pair, const Shape& B,
                            const Budget& budget = {}, std::size_t max_w = 20);
std::size_t sauer_bound(std::uint64_t num_vectors, std::size_t B_size);

// Shattered-subset family of a set of sign vectors over m coordinates:
// bit W is set iff the coordinate set W is shattered.
Bitset shattered_family(const std::vector<std::uint32_t>& vectors, std::size_t m);

}  // namespace endim
