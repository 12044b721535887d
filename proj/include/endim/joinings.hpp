#pragma once

#include <optional>

#include "endim/subshift.hpp"

namespace endim {

// 1-D SFT presentation of a source that is an SFT or a product of SFTs.
LanguageSource as_sft(const LanguageSource& X);

// Deterministic automaton for a factorial language; -1 marks the dead state.
struct Dfa {
    int alphabet = 0;
    int start = -1;
    std::vector<int> trans;  // state * alphabet + symbol
    std::size_t size() const { return alphabet ? trans.size() / static_cast<std::size_t>(alphabet) : 0; }
};

// Language of X, or of its image under code when given; minimized.
Dfa language_dfa(const LanguageSource& X, const BlockCode* code = nullptr);
// Projection of a pair-alphabet SFT onto one track (0: first, 1: second).
Dfa track_dfa(const LanguageSource& J, int ay, int track);
Dfa minimize(const Dfa& d);
// Shortest word accepted by exactly one automaton, lexicographically least.
std::optional<Word> distinguishing_word(const Dfa& a, const Dfa& b);

struct FiberProduct {
    LanguageSource sft;  // pair symbols x * ay + y
    LanguageSource X, Y, Z;
    BlockCode pi_X, pi_Y;
    int ax = 0, ay = 0;
    std::size_t window = 1;
};

FiberProduct fiber_product(const LanguageSource& X, const LanguageSource& Y, const LanguageSource& Z,
                           const BlockCode& pi_X, const BlockCode& pi_Y);
std::string pair_word(const Word& w, int ay);

struct JoiningCandidate {
    std::vector<Word> forbidden;  // extra pair-alphabet words, all of length window
    std::size_t window = 1;
};

LanguageSource candidate_system(const FiberProduct& fp, const JoiningCandidate& c);

struct JoiningReport {
    bool nonempty = false;
    bool is_joining = false;
    bool is_proper = false;
    std::optional<Word> missing_X, missing_Y;  // distinguishing words of the projections
    std::optional<Word> proper_witness;        // in the fiber product, not in J
    std::size_t window = 1;
};

JoiningReport joining_check(const FiberProduct& fp, const JoiningCandidate& c);

struct JoiningSearchResult {
    bool found = false;
    JoiningCandidate witness;
    JoiningReport report;
    std::size_t window = 0;  // largest window fully searched
    std::uint64_t checked = 0;
    bool exhausted = false;  // every candidate up to window was refuted
    std::string frontier;    // where a budget stop left off
};

JoiningSearchResult proper_joining_search(const FiberProduct& fp, std::size_t w_max = 2, const Budget& budget = {});

enum class ProbeKind { Open, Minimal };

struct ProbeReport {
    bool violation = false;
    std::string verdict;
    std::size_t window = 0;
    std::string witness;
    std::uint64_t checked = 0;
};

ProbeReport factor_probe(const Factor& f, ProbeKind kind, std::size_t w, const Budget& budget = {});

}  // namespace endim
