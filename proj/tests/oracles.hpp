#pragma once
// Brute-force reference implementations, deliberately naive and independent
// of the library's automata and solvers.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Word = std::vector<std::uint8_t>;

inline bool has_factor(const Word& w, const std::vector<Word>& forbidden) {
    for (const auto& f : forbidden)
        for (std::size_t o = 0; o + f.size() <= w.size(); ++o)
            if (std::equal(f.begin(), f.end(), w.begin() + static_cast<long>(o))) return true;
    return false;
}

// Words of length L appearing in the middle of a locally admissible word of
// length L + 2*pad.
inline std::set<Word> sft_language(int alphabet, const std::vector<Word>& forbidden, std::size_t L,
                                   std::size_t pad = 4) {
    std::set<Word> out;
    const std::size_t n = L + 2 * pad;
    Word w(n, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            out.insert(Word(w.begin() + static_cast<long>(pad), w.begin() + static_cast<long>(pad + L)));
            return;
        }
        for (int a = 0; a < alphabet; ++a) {
            w[i] = static_cast<std::uint8_t>(a);
            Word prefix(w.begin(), w.begin() + static_cast<long>(i + 1));
            bool bad = false;
            for (const auto& f : forbidden)
                if (f.size() <= i + 1 && std::equal(f.begin(), f.end(), prefix.end() - static_cast<long>(f.size())))
                    bad = true;
            if (!bad) rec(i + 1);
        }
    };
    rec(0);
    return out;
}

// SFT language of length L without padding: locally admissible words whose
// end contexts extend forever, found by pruning contexts to a fixpoint.
inline std::set<Word> sft_language_fixpoint(int alphabet, const std::vector<Word>& forbidden, std::size_t L) {
    std::size_t m = 1;
    for (const auto& f : forbidden) m = std::max(m, f.size());
    const std::size_t c = m - 1;  // context length
    std::set<Word> ctx;
    {
        Word w(c, 0);
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == c) {
                if (!has_factor(w, forbidden)) ctx.insert(w);
                return;
            }
            for (int a = 0; a < alphabet; ++a) w[i] = static_cast<std::uint8_t>(a), rec(i + 1);
        };
        rec(0);
    }
    auto prune = [&](bool right) {
        std::set<Word> good = ctx;
        for (bool changed = true; changed;) {
            changed = false;
            for (auto it = good.begin(); it != good.end();) {
                bool ok = false;
                for (int a = 0; a < alphabet && !ok; ++a) {
                    Word ext = *it;
                    if (right) ext.push_back(static_cast<std::uint8_t>(a));
                    else ext.insert(ext.begin(), static_cast<std::uint8_t>(a));
                    if (has_factor(ext, forbidden)) continue;
                    Word next = right ? Word(ext.begin() + 1, ext.end()) : Word(ext.begin(), ext.end() - 1);
                    ok = good.count(next) > 0;
                }
                if (ok) ++it;
                else it = good.erase(it), changed = true;
            }
        }
        return good;
    };
    const auto right = prune(true), left = prune(false);
    const std::size_t n = std::max(L, c);
    std::set<Word> out;
    Word w(n, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            if (left.count(Word(w.begin(), w.begin() + static_cast<long>(c))) &&
                right.count(Word(w.end() - static_cast<long>(c), w.end())))
                out.insert(Word(w.begin(), w.begin() + static_cast<long>(L)));
            return;
        }
        for (int a = 0; a < alphabet; ++a) {
            w[i] = static_cast<std::uint8_t>(a);
            if (!has_factor(Word(w.begin(), w.begin() + static_cast<long>(i + 1)), forbidden)) rec(i + 1);
        }
    };
    rec(0);
    return out;
}

inline std::uint64_t fibonacci(unsigned k) {
    std::uint64_t a = 0, b = 1;
    for (unsigned i = 0; i < k; ++i) {
        std::uint64_t c = a + b;
        a = b;
        b = c;
    }
    return a;
}

// Patterns on [0,L) supported inside (S - t) for some t; S given as sorted
// finite member list.
inline std::set<Word> free_bits_language(const std::vector<long>& S, long L) {
    std::set<Word> out;
    out.insert(Word(static_cast<std::size_t>(L), 0));
    if (S.empty()) return out;
    for (long t = S.front() - L; t <= S.back(); ++t) {
        std::vector<long> sup;
        for (long i = 0; i < L; ++i)
            if (std::binary_search(S.begin(), S.end(), i + t)) sup.push_back(i);
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << sup.size()); ++m) {
            Word w(static_cast<std::size_t>(L), 0);
            for (std::size_t b = 0; b < sup.size(); ++b)
                if ((m >> b) & 1) w[static_cast<std::size_t>(sup[b])] = 1;
            out.insert(w);
        }
    }
    return out;
}

// Minimum number of sets covering {0..n-1}; sets as bitmasks.
inline std::size_t set_cover(std::size_t n, const std::vector<std::uint64_t>& sets) {
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    if (n == 0) return 0;
    for (std::size_t k = 1; k <= sets.size(); ++k) {
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        for (;;) {
            std::uint64_t u = 0;
            for (auto i : idx) u |= sets[i];
            if ((u & all) == all) return k;
            long i = static_cast<long>(k) - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == sets.size() - k + static_cast<std::size_t>(i)) --i;
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
            for (std::size_t j = static_cast<std::size_t>(i) + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return SIZE_MAX;
}

// Largest W (as bitmask over coordinates) shattered by a family of vectors.
inline std::size_t max_shattered(std::size_t B, const std::vector<std::uint32_t>& vecs) {
    std::size_t best = 0;
    for (std::uint32_t W = 0; W < (std::uint32_t{1} << B); ++W) {
        std::size_t k = static_cast<std::size_t>(__builtin_popcount(W));
        if (k <= best) continue;
        std::set<std::uint32_t> proj;
        for (auto v : vecs) proj.insert(v & W);
        if (proj.size() == (std::size_t{1} << k)) best = k;
    }
    return best;
}

inline std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace oracle
