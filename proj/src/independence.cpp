#include "endim/independence.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <unordered_map>

namespace endim {

namespace {

std::vector<std::size_t> indices_in(const Shape& P, const Shape& Q) {
    std::vector<std::size_t> idx;
    for (const auto& q : Q) idx.push_back(static_cast<std::size_t>(P.index_of(q)));
    return idx;
}

Word pick(const Word& w, const std::vector<std::size_t>& idx) {
    Word r(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) r[i] = w[idx[i]];
    return r;
}

std::vector<Word> restrict_to_language(const LanguageSource& X, const Shape& base, const std::vector<Word>& ws) {
    PatternTable L = language(X, base);
    std::vector<Word> out;
    for (const auto& w : ws)
        if (L.find(w) >= 0) out.push_back(w);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct Fiber {
    Word y;
    std::vector<Word> rows;  // patterns on W + base
};

// Patterns on the universe shape grouped by codomain image on the eroded hull.
std::vector<Fiber> fibers_on(const Factor& f, const Shape& Ushape, const Budget& budget, Mode& mode) {
    std::map<Word, std::vector<Word>> g;
    if (f.code.is_trivial()) {
        PatternTable L = language(f.X, Ushape, 0, budget);
        if (L.mode == Mode::Bounds) throw Error(ErrorKind::Capacity, "language not materialized");
        mode = L.mode;
        g[Word{}] = std::move(L.rows);
    } else {
        const Shape H = Ushape.hull();
        PatternTable L = language(f.X, H, 0, budget);
        if (L.mode == Mode::Bounds) throw Error(ErrorKind::Capacity, "language not materialized");
        mode = L.mode;
        const Shape Y = erode(H, f.code.window());
        auto idx = indices_in(H, Ushape);
        for (const auto& r : L.rows) {
            Word y = Y.empty() ? Word{} : apply_code(f.code, Pattern{H, r}, Y).sym;
            g[std::move(y)].push_back(pick(r, idx));
        }
        for (auto& [y, rows] : g) {
            std::sort(rows.begin(), rows.end());
            rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
        }
    }
    std::vector<Fiber> out;
    for (auto& [y, rows] : g)
        if (!rows.empty()) out.push_back({y, std::move(rows)});
    if (out.empty()) throw Error(ErrorKind::Unreachable, "empty language on " + format_shape(Ushape));
    return out;
}

// Sign vector of a pattern, or -1 when some coordinate lands in neither set.
long sign_vector(const IndependencePair& P, const Word& r, const std::vector<std::vector<std::size_t>>& at) {
    long v = 0;
    thread_local Word w;
    for (std::size_t k = 0; k < at.size(); ++k) {
        w.resize(at[k].size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = r[at[k][i]];
        if (P.A2.contains(w))
            v |= 1L << k;
        else if (!P.A1.contains(w))
            return -1;
    }
    return v;
}

std::vector<std::vector<std::size_t>> coordinate_indices(const Shape& Ushape, const Shape& base, const Shape& W) {
    std::vector<std::vector<std::size_t>> at;
    for (const auto& w : W) at.push_back(indices_in(Ushape, base.translate(w)));
    return at;
}

bool lex_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

IndependencePair make_pair(const LanguageSource& X, const Shape& base, const std::vector<Word>& A1,
                           const std::vector<Word>& A2) {
    IndependencePair P{{base, restrict_to_language(X, base, A1)}, {base, restrict_to_language(X, base, A2)}};
    if (P.A1.empty() || P.A2.empty()) throw Error(ErrorKind::Config, "independence sets must meet the language");
    for (const auto& w : P.A1.allowed)
        if (P.A2.contains(w)) throw Error(ErrorKind::Config, "independence sets overlap at " + word_string(w));
    return P;
}

IndependencePair pair_from_standard(const LanguageSource& X, const ClopenCover& U) {
    CoverReport rep = cover_validate(X, U);
    if (!rep.standard) throw Error(ErrorKind::Config, "cover is not standard");
    const auto& V = rep.normalized;
    PatternTable L = language(X, V.base);
    std::vector<Word> c1, c2;
    for (const auto& w : L.rows) {
        if (!V.elements[0].contains(w)) c1.push_back(w);
        if (!V.elements[1].contains(w)) c2.push_back(w);
    }
    return make_pair(X, V.base, c1, c2);
}

ShatterResult independent_along(const Factor& f, const IndependencePair& P, const Shape& W, const Budget& budget) {
    if (W.size() > 20) throw Error(ErrorKind::Capacity, "independence set larger than 20");
    if (W.dim() != f.X.dim()) throw Error(ErrorKind::DimensionMismatch, "W vs system dimension");
    ShatterResult res;
    res.W = W;
    if (W.empty()) {
        res.universe = W;
        res.achieved = 1;
        res.shattered = true;
        res.certificate = {-1};
        return res;
    }
    res.universe = shape_product(W, P.A1.base);
    auto fibers = fibers_on(f, res.universe, budget, res.mode);
    auto at = coordinate_indices(res.universe, P.A1.base, W);
    const std::size_t full = std::size_t{1} << W.size();
    std::size_t best = fibers.size();
    std::vector<long> best_cert;
    for (std::size_t i = 0; i < fibers.size(); ++i) {
        std::vector<long> cert(full, -1);
        std::uint64_t got = 0;
        for (std::size_t j = 0; j < fibers[i].rows.size(); ++j) {
            long v = sign_vector(P, fibers[i].rows[j], at);
            if (v >= 0 && cert[v] < 0) {
                cert[v] = static_cast<long>(j);
                ++got;
            }
        }
        if (best == fibers.size() || got > res.achieved) {
            best = i;
            res.achieved = got;
            best_cert = std::move(cert);
        }
        if (got == full) break;
    }
    res.shattered = res.achieved == full;
    res.certificate = std::move(best_cert);
    res.patterns = std::move(fibers[best].rows);
    if (!f.code.is_trivial()) res.witness_y = fibers[best].y;
    return res;
}

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::size_t h = 1469598103934665603ull ^ v.size();
        for (auto c : v) h = (h ^ c) * 1099511628211ull;
        return h;
    }
};

using ShMemo = std::vector<std::unordered_map<std::vector<std::uint32_t>, Bitset, VecHash>>;

Bitset shattered_rec(const std::vector<std::uint32_t>& V, std::size_t m, ShMemo& memo) {
    Bitset out(std::size_t{1} << m);
    if (V.empty()) return out;
    if (V.size() == out.size()) {
        out.set();
        return out;
    }
    if (V.size() == 1 || m == 0) {
        out.set(0);
        return out;
    }
    auto it = memo[m].find(V);
    if (it != memo[m].end()) return it->second;
    const std::uint32_t hi = std::uint32_t{1} << (m - 1);
    std::vector<std::uint32_t> V0, V1, U;
    for (auto v : V) (v & hi ? V1 : V0).push_back(v & ~hi);
    std::set_union(V0.begin(), V0.end(), V1.begin(), V1.end(), std::back_inserter(U));
    const std::size_t half = std::size_t{1} << (m - 1);
    Bitset low = shattered_rec(U, m - 1, memo);
    Bitset both = shattered_rec(V0, m - 1, memo);
    if (both.any()) both &= shattered_rec(V1, m - 1, memo);
    for (std::size_t w = low.find_first(); w != Bitset::npos; w = low.find_next(w)) out.set(w);
    for (std::size_t w = both.find_first(); w != Bitset::npos; w = both.find_next(w)) out.set(w | half);
    memo[m].emplace(V, out);
    return out;
}

}  // namespace

Bitset shattered_family(const std::vector<std::uint32_t>& V, std::size_t m) {
    // V sorted and distinct.
    ShMemo memo(m + 1);
    return shattered_rec(V, m, memo);
}

ShatterResult max_shattered(const Factor& f, const IndependencePair& P, const Shape& B, const Budget& budget,
                            std::size_t max_w) {
    if (B.empty()) throw Error(ErrorKind::EmptyShape, "empty candidate set");
    max_w = std::min<std::size_t>(max_w, 20);
    if (B.size() > 20 || B.size() > max_w) {
        // Greedy: add the first candidate keeping W shattered, which is also
        // the candidate of largest marginal growth.
        std::vector<Point> W;
        ShatterResult last = independent_along(f, P, Shape(B.dim(), {}), budget);
        bool grew = true;
        while (grew && W.size() < max_w) {
            grew = false;
            for (const auto& c : B) {
                if (std::find(W.begin(), W.end(), c) != W.end()) continue;
                auto trial = W;
                trial.push_back(c);
                ShatterResult r = independent_along(f, P, Shape(B.dim(), trial), budget);
                if (r.shattered) {
                    W = std::move(trial);
                    last = std::move(r);
                    grew = true;
                    break;
                }
            }
        }
        last.greedy = true;
        return last;
    }
    Mode mode = Mode::Exact;
    const Shape Ushape = shape_product(B, P.A1.base);
    auto fibers = fibers_on(f, Ushape, budget, mode);
    auto at = coordinate_indices(Ushape, P.A1.base, B);
    const std::size_t m = B.size();
    Bitset fam(std::size_t{1} << m);
    for (const auto& fb : fibers) {
        std::vector<std::uint32_t> V;
        for (const auto& r : fb.rows) {
            long v = sign_vector(P, r, at);
            if (v >= 0) V.push_back(static_cast<std::uint32_t>(v));
        }
        std::sort(V.begin(), V.end());
        V.erase(std::unique(V.begin(), V.end()), V.end());
        fam |= shattered_family(V, m);
    }
    // Largest shattered set, lexicographically least among equals.
    std::vector<std::size_t> best_idx;
    bool have = false;
    for (std::size_t w = fam.find_first(); w != Bitset::npos; w = fam.find_next(w)) {
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < m; ++k)
            if (w >> k & 1) idx.push_back(k);
        if (!have || idx.size() > best_idx.size() || (idx.size() == best_idx.size() && lex_less(idx, best_idx))) {
            best_idx = std::move(idx);
            have = true;
        }
    }
    std::vector<Point> pts;
    for (auto k : best_idx) pts.push_back(B.points()[k]);
    return independent_along(f, P, Shape(B.dim(), pts), budget);
}

std::size_t sauer_bound(std::uint64_t num, std::size_t n) {
    long double sum = 0, c = 1;  // C(n, i)
    std::size_t k = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        if (!(static_cast<long double>(num) > sum)) break;
        k = i;
        sum += c;
        c = c * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
    }
    return k;
}

}  // namespace endim
