#include "endim/cover.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "endim/parallel.hpp"

namespace endim {

namespace {

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::size_t h = 1469598103934665603ull;
        for (auto c : w) h = (h ^ c) * 1099511628211ull;
        return h;
    }
};

std::vector<std::size_t> restrict_indices(const Shape& P, const Shape& Q) {
    std::vector<std::size_t> idx;
    idx.reserve(Q.size());
    for (const auto& q : Q) {
        long i = P.index_of(q);
        if (i < 0) throw Error(ErrorKind::Margin, "point " + format_point(q, P.dim()) + " outside " + format_shape(P));
        idx.push_back(static_cast<std::size_t>(i));
    }
    return idx;
}

Word pick(const Word& w, const std::vector<std::size_t>& idx) {
    Word r(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) r[i] = w[idx[i]];
    return r;
}

void sort_unique(std::vector<Word>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

bool ClopenSet::contains(const Word& w) const {
    return std::binary_search(allowed.begin(), allowed.end(), w);
}

const char* cover_kind_name(ClopenCover::Kind k) {
    switch (k) {
    case ClopenCover::Kind::General: return "general";
    case ClopenCover::Kind::Partition: return "partition";
    case ClopenCover::Kind::Standard: return "standard";
    }
    return "?";
}

ClopenCover make_cover(const Shape& base, const std::vector<std::vector<Word>>& elements) {
    if (base.empty()) throw Error(ErrorKind::EmptyShape, "cover base");
    ClopenCover U;
    U.base = base;
    for (auto ws : elements) {
        for (const auto& w : ws)
            if (w.size() != base.size()) throw Error(ErrorKind::Config, "cover word length differs from base size");
        sort_unique(ws);
        U.elements.push_back({base, std::move(ws)});
    }
    return U;
}

ClopenCover cylinder_partition(const LanguageSource& X, const Shape& base) {
    PatternTable L = language(X, base);
    ClopenCover U;
    U.base = base;
    U.kind = ClopenCover::Kind::Partition;
    for (const auto& w : L.rows) U.elements.push_back({base, {w}});
    return U;
}

ClopenCover standard_cover(const LanguageSource& X, const Shape& base, const std::vector<Word>& A1,
                           const std::vector<Word>& A2) {
    PatternTable L = language(X, base);
    std::vector<Word> a1 = A1, a2 = A2;
    sort_unique(a1);
    sort_unique(a2);
    auto admissible = [&](const std::vector<Word>& a) {
        return std::any_of(a.begin(), a.end(), [&](const Word& w) { return L.find(w) >= 0; });
    };
    if (!admissible(a1) || !admissible(a2))
        throw Error(ErrorKind::Degenerate, "standard cover needs non-empty closed sets");
    std::vector<Word> both;
    std::set_intersection(a1.begin(), a1.end(), a2.begin(), a2.end(), std::back_inserter(both));
    if (!both.empty()) throw Error(ErrorKind::Degenerate, "closed sets of a standard cover must be disjoint");
    ClopenCover U;
    U.base = base;
    U.kind = ClopenCover::Kind::Standard;
    for (const auto* a : {&a1, &a2}) {
        ClopenSet e{base, {}};
        for (const auto& w : L.rows)
            if (!std::binary_search(a->begin(), a->end(), w)) e.allowed.push_back(w);
        U.elements.push_back(std::move(e));
    }
    return U;
}

ClopenCover join(const LanguageSource& X, const ClopenCover& U, const ClopenCover& V) {
    Shape B = shape_union(U.base, V.base);
    PatternTable L = language(X, B);
    auto iu = restrict_indices(B, U.base), iv = restrict_indices(B, V.base);
    ClopenCover J;
    J.base = B;
    for (const auto& Ui : U.elements)
        for (const auto& Vj : V.elements) {
            ClopenSet e{B, {}};
            for (const auto& w : L.rows)
                if (Ui.contains(pick(w, iu)) && Vj.contains(pick(w, iv))) e.allowed.push_back(w);
            if (!e.empty()) J.elements.push_back(std::move(e));
        }
    return J;
}

ClopenCover translate(const ClopenCover& U, const Point& g) {
    ClopenCover T = U;
    T.base = U.base.translate(g);
    for (auto& e : T.elements) e.base = T.base;
    return T;
}

ClopenCover pullback(const LanguageSource& X, const BlockCode& code, const ClopenCover& V) {
    Shape B = shape_product(code.window(), V.base);
    PatternTable L = language(X, B);
    ClopenCover P;
    P.base = B;
    P.kind = V.kind;
    P.elements.assign(V.size(), ClopenSet{B, {}});
    for (const auto& w : L.rows) {
        Word y = apply_code(code, Pattern{B, w}, V.base).sym;
        for (std::size_t i = 0; i < V.size(); ++i)
            if (V.elements[i].contains(y)) P.elements[i].allowed.push_back(w);
    }
    return P;
}

bool refines(const LanguageSource& X, const ClopenCover& V, const ClopenCover& U) {
    Shape B = shape_union(U.base, V.base);
    PatternTable L = language(X, B);
    auto iu = restrict_indices(B, U.base), iv = restrict_indices(B, V.base);
    for (const auto& Vj : V.elements) {
        bool inside_some = false;
        for (const auto& Ui : U.elements) {
            bool inside = true;
            for (const auto& w : L.rows)
                if (Vj.contains(pick(w, iv)) && !Ui.contains(pick(w, iu))) { inside = false; break; }
            if (inside) { inside_some = true; break; }
        }
        if (!inside_some) return false;
    }
    return true;
}

CoverReport cover_validate(const LanguageSource& X, const ClopenCover& U) {
    if (U.elements.empty()) throw Error(ErrorKind::CoverageGap, "cover has no elements");
    for (const auto& e : U.elements)
        if (!(e.base == U.base)) throw Error(ErrorKind::Config, "cover elements must share the base");
    PatternTable L = language(X, U.base);
    CoverReport r;
    r.normalized.base = U.base;
    for (const auto& e : U.elements) {
        ClopenSet n{U.base, {}};
        for (const auto& w : e.allowed)
            if (L.find(w) >= 0) n.allowed.push_back(w);
        r.normalized.elements.push_back(std::move(n));
    }
    bool disjoint = true;
    for (const auto& w : L.rows) {
        int hits = 0;
        for (const auto& e : r.normalized.elements) hits += e.contains(w);
        if (hits == 0) throw Error(ErrorKind::CoverageGap, "pattern " + word_string(w) + " uncovered");
        if (hits > 1) disjoint = false;
    }
    r.partition = disjoint;
    if (r.normalized.size() == 2) {
        r.standard = r.normalized.elements[0].allowed.size() < L.size() &&
                     r.normalized.elements[1].allowed.size() < L.size();
    }
    r.kind = r.partition ? ClopenCover::Kind::Partition
                         : (r.standard ? ClopenCover::Kind::Standard : ClopenCover::Kind::General);
    r.normalized.kind = r.kind;
    return r;
}

// ---- exact set cover ----

namespace {

class Solver {
public:
    Solver(std::size_t n, std::vector<Bitset> sets, std::uint64_t budget)
        : n_(n), sets_(std::move(sets)), budget_(budget), covering_(n) {
        for (std::size_t s = 0; s < sets_.size(); ++s) {
            max_size_ = std::max(max_size_, sets_[s].count());
            for (auto e = sets_[s].find_first(); e != Bitset::npos; e = sets_[s].find_next(e)) covering_[e].push_back(s);
        }
        mark_.assign(sets_.size(), 0);
    }

    std::size_t lower_bound(const Bitset& unc) {
        std::fill(mark_.begin(), mark_.end(), 0);
        std::size_t lb = 0;
        for (auto e = unc.find_first(); e != Bitset::npos; e = unc.find_next(e)) {
            bool free = true;
            for (auto s : covering_[e])
                if (mark_[s]) { free = false; break; }
            if (!free) continue;
            ++lb;
            for (auto s : covering_[e]) mark_[s] = 1;
        }
        std::size_t by_size = max_size_ ? (unc.count() + max_size_ - 1) / max_size_ : 0;
        return std::max(lb, by_size);
    }

    std::vector<std::size_t> greedy() const {
        Bitset unc(n_);
        unc.set();
        std::vector<std::size_t> chosen;
        while (unc.any()) {
            std::size_t best = 0, gain = 0;
            for (std::size_t s = 0; s < sets_.size(); ++s) {
                std::size_t g = (sets_[s] & unc).count();
                if (g > gain) { gain = g; best = s; }
            }
            chosen.push_back(best);
            unc -= sets_[best];
        }
        return chosen;
    }

    void search(const Bitset& unc, std::vector<std::size_t>& chosen) {
        if (aborted_) return;
        if (++nodes_ > budget_) { aborted_ = true; return; }
        if (unc.none()) {
            if (chosen.size() < best_.size()) best_ = chosen;
            return;
        }
        if (chosen.size() + lower_bound(unc) >= best_.size()) return;
        std::size_t e = Bitset::npos, deg = SIZE_MAX;
        for (auto x = unc.find_first(); x != Bitset::npos; x = unc.find_next(x))
            if (covering_[x].size() < deg) { deg = covering_[x].size(); e = x; }
        std::vector<std::pair<std::size_t, std::size_t>> cand;
        for (auto s : covering_[e]) cand.push_back({(sets_[s] & unc).count(), s});
        std::sort(cand.begin(), cand.end(), [](auto a, auto b) { return a.first != b.first ? a.first > b.first : a.second < b.second; });
        for (const auto& [g, s] : cand) {
            chosen.push_back(s);
            search(unc - sets_[s], chosen);
            chosen.pop_back();
            if (aborted_) return;
        }
    }

    std::size_t n_;
    std::vector<Bitset> sets_;
    std::uint64_t budget_;
    std::vector<std::vector<std::size_t>> covering_;
    std::vector<char> mark_;
    std::size_t max_size_ = 0;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
    std::vector<std::size_t> best_;
};

}  // namespace

SetCoverResult min_subcover(std::size_t universe, const std::vector<Bitset>& sets, std::uint64_t node_budget) {
    SetCoverResult r;
    if (universe == 0) return r;
    Bitset all(universe);
    for (const auto& s : sets) {
        if (s.size() != universe) throw Error(ErrorKind::Invariant, "set size differs from universe");
        all |= s;
    }
    if (!all.all()) {
        all.flip();
        throw Error(ErrorKind::Infeasible, "element " + std::to_string(all.find_first()) + " uncovered");
    }
    // Drop duplicate and dominated sets, larger sets first.
    std::vector<std::size_t> order(sets.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return sets[a].count() > sets[b].count(); });
    std::vector<std::size_t> keep;
    for (auto i : order) {
        bool dominated = false;
        for (auto k : keep)
            if (sets[i].is_subset_of(sets[k])) { dominated = true; break; }
        if (!dominated) keep.push_back(i);
    }
    std::sort(keep.begin(), keep.end());
    std::vector<Bitset> reduced;
    for (auto k : keep) reduced.push_back(sets[k]);
    Solver solver(universe, std::move(reduced), node_budget);
    solver.best_ = solver.greedy();
    Bitset unc(universe);
    unc.set();
    const std::size_t root_lb = std::max<std::size_t>(1, solver.lower_bound(unc));
    std::vector<std::size_t> chosen;
    if (root_lb < solver.best_.size()) solver.search(unc, chosen);
    r.nodes = solver.nodes_;
    r.exact = !solver.aborted_;
    r.upper = solver.best_.size();
    r.lower = r.exact ? r.upper : root_lb;
    for (auto s : solver.best_) r.chosen.push_back(keep[s]);
    std::sort(r.chosen.begin(), r.chosen.end());
    return r;
}

// ---- join complexity ----

namespace {

using Profile = std::vector<std::uint64_t>;

struct FiberValue {
    Count lower = Count::of(1), upper = Count::of(1);
    bool exact = true;
};

// Maximal join cells over distinct profiles, by depth-first refinement with
// dominated-branch pruning. Returns false when the node budget runs out.
bool maximal_cells(const std::vector<Profile>& prof, std::size_t k, std::uint64_t budget,
                   std::vector<std::vector<std::uint32_t>>& cells) {
    const std::size_t depth = prof.empty() ? 0 : prof[0].size();
    std::uint64_t nodes = 0;
    bool ok = true;
    auto rec = [&](auto&& self, std::size_t level, const std::vector<std::uint32_t>& alive) -> void {
        if (!ok) return;
        if (++nodes > budget) { ok = false; return; }
        if (level == depth) {
            cells.push_back(alive);
            return;
        }
        std::vector<std::vector<std::uint32_t>> branches;
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<std::uint32_t> sub;
            for (auto p : alive)
                if ((prof[p][level] >> i) & 1) sub.push_back(p);
            if (!sub.empty()) branches.push_back(std::move(sub));
        }
        std::stable_sort(branches.begin(), branches.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
        std::vector<const std::vector<std::uint32_t>*> kept;
        for (const auto& b : branches) {
            bool dominated = false;
            for (const auto* o : kept)
                if (std::includes(o->begin(), o->end(), b.begin(), b.end())) { dominated = true; break; }
            if (!dominated) kept.push_back(&b);
        }
        for (const auto* b : kept) self(self, level + 1, *b);
    };
    std::vector<std::uint32_t> all(prof.size());
    std::iota(all.begin(), all.end(), 0);
    rec(rec, 0, all);
    if (!ok) return false;
    std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() > b.size() : a < b; });
    std::vector<std::vector<std::uint32_t>> maximal;
    for (auto& c : cells) {
        bool dominated = false;
        for (const auto& m : maximal)
            if (std::includes(m.begin(), m.end(), c.begin(), c.end())) { dominated = true; break; }
        if (!dominated) maximal.push_back(std::move(c));
    }
    cells = std::move(maximal);
    return true;
}

FiberValue fiber_value(const std::vector<Profile>& raw, std::size_t k, bool partition, const Budget& budget) {
    FiberValue v;
    if (partition) {
        std::set<std::vector<std::uint8_t>> it;
        for (const auto& p : raw) {
            std::vector<std::uint8_t> s(p.size());
            for (std::size_t g = 0; g < p.size(); ++g) s[g] = static_cast<std::uint8_t>(__builtin_ctzll(p[g]));
            it.insert(std::move(s));
        }
        v.lower = v.upper = Count::of(it.size());
        return v;
    }
    std::vector<Profile> prof = raw;
    std::sort(prof.begin(), prof.end());
    prof.erase(std::unique(prof.begin(), prof.end()), prof.end());
    std::vector<std::vector<std::uint32_t>> cells;
    if (maximal_cells(prof, k, budget.nodes, cells)) {
        std::vector<Bitset> sets;
        for (const auto& c : cells) {
            Bitset b(prof.size());
            for (auto p : c) b.set(p);
            sets.push_back(std::move(b));
        }
        SetCoverResult sc = min_subcover(prof.size(), sets, budget.nodes);
        v.lower = Count::of(sc.lower);
        v.upper = Count::of(sc.upper);
        v.exact = sc.exact;
        return v;
    }
    // Budget fallback: pairwise-incompatible profiles give a lower bound,
    // lowest-index itineraries give a cover.
    v.exact = false;
    std::vector<std::size_t> clique;
    for (std::size_t i = 0; i < prof.size(); ++i) {
        bool conflicts_all = true;
        for (auto j : clique) {
            bool conflict = false;
            for (std::size_t g = 0; g < prof[i].size(); ++g)
                if ((prof[i][g] & prof[j][g]) == 0) { conflict = true; break; }
            if (!conflict) { conflicts_all = false; break; }
        }
        if (conflicts_all) clique.push_back(i);
    }
    std::set<std::vector<std::uint8_t>> it;
    for (const auto& p : prof) {
        std::vector<std::uint8_t> s(p.size());
        for (std::size_t g = 0; g < p.size(); ++g) s[g] = static_cast<std::uint8_t>(__builtin_ctzll(p[g]));
        it.insert(std::move(s));
    }
    v.lower = Count::of(std::max<std::size_t>(1, clique.size()));
    v.upper = Count::of(it.size());
    return v;
}

bool fine_partition(const CoverReport& rep) {
    if (!rep.partition) return false;
    for (const auto& e : rep.normalized.elements)
        if (e.allowed.size() > 1) return false;
    return true;
}

ComplexityResult complexity_impl(const Factor& f, const ClopenCover& U, const Shape& F, const Budget& budget,
                                 bool fast_paths) {
    if (F.empty()) throw Error(ErrorKind::EmptyShape, "complexity over empty F");
    if (F.dim() != f.X.dim()) throw Error(ErrorKind::DimensionMismatch, "F vs system dimension");
    CoverReport rep = cover_validate(f.X, U);
    const ClopenCover& V = rep.normalized;
    if (V.size() > 64) throw Error(ErrorKind::Capacity, "covers with more than 64 elements");
    const Shape Ushape = shape_product(F, V.base);
    ComplexityResult res;
    const bool trivial = f.code.is_trivial();

    if (fast_paths && trivial && fine_partition(rep)) {
        LanguageSize s = language_size(f.X, Ushape, budget);
        if (s.upper == Count::of(0)) throw Error(ErrorKind::Degenerate, "empty language");
        res.lower = s.lower;
        res.upper = s.upper;
        res.mode = s.mode;
        return res;
    }

    // Fibers over codomain patterns on the eroded hull.
    std::map<Word, std::vector<Word>> fibers;
    Mode lang_mode = Mode::Exact;
    try {
        if (trivial) {
            PatternTable L = language(f.X, Ushape, 0, budget);
            if (L.mode == Mode::Bounds) throw Error(ErrorKind::Capacity, "language not materialized");
            lang_mode = L.mode;
            if (!L.rows.empty()) fibers.emplace(Word{}, std::move(L.rows));
            res.y_shape = Shape::empty(F.dim());
        } else {
            const Shape H = Ushape.hull();
            PatternTable L = language(f.X, H, 0, budget);
            if (L.mode == Mode::Bounds) throw Error(ErrorKind::Capacity, "language not materialized");
            lang_mode = L.mode;
            res.y_shape = erode(H, f.code.window());
            auto idx = restrict_indices(H, Ushape);
            for (const auto& r : L.rows) {
                Pattern p{H, r};
                Word y = res.y_shape.empty() ? Word{} : apply_code(f.code, p, res.y_shape).sym;
                fibers[std::move(y)].push_back(pick(r, idx));
            }
            for (auto& [y, rows] : fibers) sort_unique(rows);
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Capacity) throw;
        res.mode = Mode::Bounds;
        res.budget_hit = true;
        res.lower = Count::of(1);
        res.upper = Count::of(1);
        for (std::size_t i = 0; i < F.size(); ++i) res.upper = res.upper * Count::of(V.size());
        return res;
    }
    if (fibers.empty()) throw Error(ErrorKind::Degenerate, "empty language on " + format_shape(Ushape));

    std::unordered_map<Word, std::uint64_t, WordHash> mask_of;
    for (std::size_t i = 0; i < V.size(); ++i)
        for (const auto& w : V.elements[i].allowed) mask_of[w] |= std::uint64_t{1} << i;
    std::vector<std::vector<std::size_t>> at;
    for (const auto& g : F) at.push_back(restrict_indices(Ushape, V.base.translate(g)));

    std::vector<const std::pair<const Word, std::vector<Word>>*> fl;
    for (const auto& kv : fibers) fl.push_back(&kv);
    std::vector<FiberValue> vals(fl.size());
    parallel_for(fl.size(), [&](std::size_t i) {
        std::vector<Profile> prof;
        prof.reserve(fl[i]->second.size());
        for (const auto& r : fl[i]->second) {
            Profile p(at.size());
            for (std::size_t g = 0; g < at.size(); ++g) {
                auto it = mask_of.find(pick(r, at[g]));
                if (it == mask_of.end() || it->second == 0)
                    throw Error(ErrorKind::Infeasible, "pattern " + word_string(r) + " has an uncovered translate");
                p[g] = it->second;
            }
            prof.push_back(std::move(p));
        }
        vals[i] = fiber_value(prof, V.size(), fast_paths && rep.partition, budget);
    });
    res.fibers = fl.size();
    std::size_t arg = 0;
    bool all_exact = true;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (res.upper < vals[i].upper) res.upper = vals[i].upper;
        if (i == 0 || res.lower < vals[i].lower) {
            arg = i;
            res.lower = vals[i].lower;
        }
        all_exact = all_exact && vals[i].exact;
    }
    res.argmax_y = fl[arg]->first;
    res.mode = all_exact ? lang_mode : Mode::Bounds;
    res.budget_hit = !all_exact;
    return res;
}

}  // namespace

ComplexityResult complexity_relative(const Factor& f, const ClopenCover& U, const Shape& F, const Budget& budget) {
    return complexity_impl(f, U, F, budget, true);
}

ComplexityResult complexity_absolute(const LanguageSource& X, const ClopenCover& U, const Shape& F,
                                     const Budget& budget) {
    return complexity_impl(Factor::trivial(X), U, F, budget, true);
}

ComplexityResult complexity_setcover_only(const Factor& f, const ClopenCover& U, const Shape& F,
                                          const Budget& budget) {
    return complexity_impl(f, U, F, budget, false);
}

bool ComplexityCurve::exact() const {
    return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.mode == Mode::Exact; });
}

}  // namespace endim
