#include "endim/subshift.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <unordered_set>

namespace endim {

// ---- Count ----

Count Count::pow2(std::size_t k) {
    if (k < 64) return of(std::uint64_t{1} << k);
    return {0, true, std::ldexp(1.0L, static_cast<int>(k))};
}

Count& Count::operator+=(const Count& o) {
    approx += o.approx;
    if (overflow || o.overflow || __builtin_add_overflow(value, o.value, &value)) {
        overflow = true;
        value = 0;
    }
    return *this;
}

Count operator*(const Count& a, const Count& b) {
    Count r;
    r.approx = a.approx * b.approx;
    if (a.overflow || b.overflow || __builtin_mul_overflow(a.value, b.value, &r.value)) {
        r.overflow = true;
        r.value = 0;
    }
    return r;
}

bool operator<(const Count& a, const Count& b) {
    if (!a.overflow && !b.overflow) return a.value < b.value;
    return a.approx < b.approx;
}

bool operator==(const Count& a, const Count& b) {
    if (!a.overflow && !b.overflow) return a.value == b.value;
    return a.overflow == b.overflow && a.approx == b.approx;
}

double Count::ln() const {
    if (!overflow) return std::log(static_cast<double>(value));
    return static_cast<double>(std::log(approx));
}

std::string Count::str() const {
    if (!overflow) return std::to_string(value);
    char buf[64];
    std::snprintf(buf, sizeof buf, "2^%.6g", static_cast<double>(std::log2(approx)));
    return buf;
}

const char* mode_name(Mode m) {
    switch (m) {
    case Mode::Exact: return "exact";
    case Mode::LocalUpper: return "local_upper";
    case Mode::Bounds: return "bounds";
    }
    return "?";
}

std::uint8_t Pattern::at(const Point& p) const {
    long i = shape.index_of(p);
    if (i < 0) throw Error(ErrorKind::Margin, "point " + format_point(p, shape.dim()) + " outside pattern");
    return sym[static_cast<std::size_t>(i)];
}

std::string word_string(const Word& w) {
    std::string s;
    for (auto c : w) s.push_back(c < 10 ? static_cast<char>('0' + c) : static_cast<char>('a' + c - 10));
    return s;
}

Word parse_word(const std::string& s) {
    Word w;
    for (char c : s) {
        if (c >= '0' && c <= '9') w.push_back(static_cast<std::uint8_t>(c - '0'));
        else if (c >= 'a' && c <= 'z') w.push_back(static_cast<std::uint8_t>(c - 'a' + 10));
        else throw Error(ErrorKind::Config, "bad symbol '" + std::string(1, c) + "' in word " + s);
    }
    return w;
}

long PatternTable::find(const Word& w) const {
    auto it = std::lower_bound(rows.begin(), rows.end(), w);
    if (it == rows.end() || *it != w) return -1;
    return static_cast<long>(it - rows.begin());
}

// ---- sources ----

LanguageSource LanguageSource::sft(int alphabet, int dim, std::vector<Pattern> forbidden) {
    require_dim(dim);
    if (alphabet < 1 || alphabet > 255) throw Error(ErrorKind::Config, "alphabet size out of range");
    for (const auto& f : forbidden) {
        if (f.shape.empty()) throw Error(ErrorKind::Config, "forbidden pattern with empty shape");
        if (f.shape.dim() != dim) throw Error(ErrorKind::DimensionMismatch, "forbidden pattern dimension");
        for (auto c : f.sym)
            if (c >= alphabet) throw Error(ErrorKind::Config, "forbidden symbol outside alphabet");
    }
    LanguageSource s;
    s.kind_ = Kind::Sft;
    s.alphabet_ = alphabet;
    s.dim_ = dim;
    s.forbidden_ = std::move(forbidden);
    return s;
}

LanguageSource LanguageSource::sft_words(int alphabet, const std::vector<std::string>& words) {
    std::vector<Pattern> fs;
    for (const auto& w : words) {
        Word sym = parse_word(w);
        fs.push_back({Shape::interval(0, static_cast<std::int64_t>(sym.size())), sym});
    }
    return sft(alphabet, 1, std::move(fs));
}

LanguageSource LanguageSource::free_bits(IndexSet S) {
    if (S.dim() != 1) throw Error(ErrorKind::UnsupportedDimension, "free_bits requires dimension 1");
    LanguageSource s;
    s.kind_ = Kind::FreeBits;
    s.alphabet_ = 2;
    s.dim_ = 1;
    s.S_ = std::make_shared<IndexSet>(std::move(S));
    return s;
}

LanguageSource LanguageSource::product(std::vector<LanguageSource> factors) {
    if (factors.empty()) throw Error(ErrorKind::Config, "empty product");
    int a = 1;
    for (const auto& f : factors) {
        if (f.dim() != factors[0].dim()) throw Error(ErrorKind::DimensionMismatch, "product factors");
        a *= f.alphabet();
        if (a > 255) throw Error(ErrorKind::Capacity, "product alphabet exceeds 255 symbols");
    }
    LanguageSource s;
    s.kind_ = Kind::Product;
    s.alphabet_ = a;
    s.dim_ = factors[0].dim();
    s.factors_ = std::move(factors);
    return s;
}

LanguageSource product_system(const std::vector<LanguageSource>& sources) {
    return LanguageSource::product(sources);
}

std::int64_t LanguageSource::window_span() const {
    std::int64_t m = 1;
    for (const auto& f : forbidden_) {
        Point lo = f.shape.min_corner(), hi = f.shape.max_corner();
        m = std::max({m, hi.x - lo.x + 1, hi.y - lo.y + 1});
    }
    return m;
}

std::string LanguageSource::describe() const {
    std::ostringstream os;
    switch (kind_) {
    case Kind::Sft:
        os << "sft(a=" << alphabet_ << ",d=" << dim_ << ",forbid=" << forbidden_.size() << ")";
        break;
    case Kind::FreeBits: os << "free_bits(" << S_->label() << ")"; break;
    case Kind::Product:
        os << "product(";
        for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? "," : "") << factors_[i].describe();
        os << ")";
        break;
    }
    return os.str();
}

// ---- SFT graph ----

namespace {

using Bits = std::vector<std::uint64_t>;

void set_bit(Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }
bool any_bit(const Bits& b) {
    for (auto w : b)
        if (w) return true;
    return false;
}

struct Normalized {
    std::vector<std::int64_t> offs;
    Word sym;
    std::int64_t span;
};

std::vector<Normalized> normalize_1d(const std::vector<Pattern>& fs) {
    std::vector<Normalized> out;
    for (const auto& f : fs) {
        Normalized n;
        std::int64_t lo = f.shape[0].x;
        for (std::size_t i = 0; i < f.shape.size(); ++i) n.offs.push_back(f.shape[i].x - lo);
        n.sym = f.sym;
        n.span = n.offs.back() + 1;
        out.push_back(std::move(n));
    }
    return out;
}

bool word_admissible(const std::vector<Normalized>& fs, const Word& w) {
    const auto len = static_cast<std::int64_t>(w.size());
    for (const auto& f : fs) {
        for (std::int64_t o = 0; o + f.span <= len; ++o) {
            bool hit = true;
            for (std::size_t i = 0; i < f.offs.size(); ++i)
                if (w[static_cast<std::size_t>(o + f.offs[i])] != f.sym[i]) { hit = false; break; }
            if (hit) return false;
        }
    }
    return true;
}

}  // namespace

SftGraph::SftGraph(const LanguageSource& X, int min_memory) {
    if (X.kind() != LanguageSource::Kind::Sft) throw Error(ErrorKind::Config, "SftGraph needs an sft source");
    if (X.dim() != 1) throw Error(ErrorKind::UnsupportedDimension, "SftGraph is 1-D only");
    alphabet_ = X.alphabet();
    memory_ = static_cast<int>(std::max<std::int64_t>(std::max(1, min_memory), X.window_span() - 1));
    const auto fs = normalize_1d(X.forbidden());
    std::size_t total = 1;
    for (int i = 0; i < memory_; ++i) {
        total *= static_cast<std::size_t>(alphabet_);
        if (total > (std::size_t{1} << 22)) throw Error(ErrorKind::Capacity, "SFT state space too large");
    }
    const std::size_t A = static_cast<std::size_t>(alphabet_);
    auto decode = [&](std::size_t code) {
        Word w(static_cast<std::size_t>(memory_));
        for (int i = memory_ - 1; i >= 0; --i) {
            w[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(code % A);
            code /= A;
        }
        return w;
    };
    std::vector<char> alive(total, 0);
    std::vector<int> nxt(total * A, -1);
    for (std::size_t s = 0; s < total; ++s) {
        Word w = decode(s);
        if (!word_admissible(fs, w)) continue;
        alive[s] = 1;
        w.push_back(0);
        for (std::size_t a = 0; a < A; ++a) {
            w.back() = static_cast<std::uint8_t>(a);
            if (word_admissible(fs, w)) nxt[s * A + a] = static_cast<int>((s * A + a) % total);
        }
    }
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<int> indeg(total, 0), outdeg(total, 0);
        for (std::size_t s = 0; s < total; ++s) {
            if (!alive[s]) continue;
            for (std::size_t a = 0; a < A; ++a) {
                int t = nxt[s * A + a];
                if (t >= 0 && alive[static_cast<std::size_t>(t)]) {
                    ++outdeg[s];
                    ++indeg[static_cast<std::size_t>(t)];
                }
            }
        }
        for (std::size_t s = 0; s < total; ++s)
            if (alive[s] && (indeg[s] == 0 || outdeg[s] == 0)) { alive[s] = 0; changed = true; }
    }
    std::vector<int> remap(total, -1);
    for (std::size_t s = 0; s < total; ++s)
        if (alive[s]) {
            remap[s] = static_cast<int>(states_.size());
            states_.push_back(decode(s));
        }
    next_.assign(states_.size() * A, -1);
    for (std::size_t s = 0; s < total; ++s) {
        if (!alive[s]) continue;
        for (std::size_t a = 0; a < A; ++a) {
            int t = nxt[s * A + a];
            if (t >= 0 && alive[static_cast<std::size_t>(t)])
                next_[static_cast<std::size_t>(remap[s]) * A + a] = remap[static_cast<std::size_t>(t)];
        }
    }
}

namespace {

Bits successors(const SftGraph& g, const Bits& T, int a) {
    Bits out(T.size(), 0);
    for (std::size_t wi = 0; wi < T.size(); ++wi) {
        std::uint64_t w = T[wi];
        while (w) {
            std::size_t s = wi * 64 + static_cast<std::size_t>(__builtin_ctzll(w));
            w &= w - 1;
            int t = g.next(s, a);
            if (t >= 0) set_bit(out, static_cast<std::size_t>(t));
        }
    }
    return out;
}

Bits all_states(std::size_t n) {
    Bits b((n + 63) / 64, 0);
    for (std::size_t i = 0; i < n; ++i) set_bit(b, i);
    return b;
}

void require_1d_nonempty(const Shape& shape) {
    if (shape.empty()) throw Error(ErrorKind::EmptyShape, "language of empty shape");
    if (shape.dim() != 1) throw Error(ErrorKind::DimensionMismatch, "1-D shape expected");
}

}  // namespace

PatternTable SftGraph::language(const Shape& shape, const Budget& budget) const {
    require_1d_nonempty(shape);
    PatternTable t;
    t.shape = shape;
    if (empty()) {
        t.empty_language = true;
        t.lower = t.upper = Count::of(0);
        return t;
    }
    std::map<Word, Bits> cur;
    cur.emplace(Word{}, all_states(num_states()));
    std::size_t k = 0;
    const std::int64_t lo = shape[0].x, hi = shape.points().back().x;
    for (std::int64_t x = lo; x <= hi; ++x) {
        const bool in = k < shape.size() && shape[k].x == x;
        if (in) ++k;
        std::map<Word, Bits> nxt;
        for (const auto& [w, T] : cur) {
            if (in) {
                for (int a = 0; a < alphabet_; ++a) {
                    Bits S = successors(*this, T, a);
                    if (!any_bit(S)) continue;
                    Word w2 = w;
                    w2.push_back(static_cast<std::uint8_t>(a));
                    nxt.emplace(std::move(w2), std::move(S));
                }
            } else {
                Bits U(T.size(), 0);
                for (int a = 0; a < alphabet_; ++a) {
                    Bits S = successors(*this, T, a);
                    for (std::size_t i = 0; i < U.size(); ++i) U[i] |= S[i];
                }
                if (any_bit(U)) nxt.emplace(w, std::move(U));
            }
        }
        if (nxt.size() > budget.table)
            throw Error(ErrorKind::Capacity, "pattern table exceeds budget on " + format_shape(shape));
        cur = std::move(nxt);
    }
    t.rows.reserve(cur.size());
    for (auto& [w, T] : cur) t.rows.push_back(w);
    t.lower = t.upper = Count::of(t.rows.size());
    t.empty_language = t.rows.empty();
    return t;
}

Count SftGraph::count(const Shape& shape) const {
    require_1d_nonempty(shape);
    if (empty()) return Count::of(0);
    std::map<Bits, Count> cur;
    cur.emplace(all_states(num_states()), Count::of(1));
    std::size_t k = 0;
    const std::int64_t lo = shape[0].x, hi = shape.points().back().x;
    for (std::int64_t x = lo; x <= hi; ++x) {
        const bool in = k < shape.size() && shape[k].x == x;
        if (in) ++k;
        std::map<Bits, Count> nxt;
        for (const auto& [T, c] : cur) {
            if (in) {
                for (int a = 0; a < alphabet_; ++a) {
                    Bits S = successors(*this, T, a);
                    if (any_bit(S)) nxt[std::move(S)] += c;
                }
            } else {
                Bits U(T.size(), 0);
                for (int a = 0; a < alphabet_; ++a) {
                    Bits S = successors(*this, T, a);
                    for (std::size_t i = 0; i < U.size(); ++i) U[i] |= S[i];
                }
                if (any_bit(U)) nxt[std::move(U)] += c;
            }
        }
        cur = std::move(nxt);
    }
    Count total = Count::of(0);
    for (const auto& [T, c] : cur) total += c;
    return total;
}

std::vector<Count> SftGraph::interval_counts(std::size_t L) const {
    std::vector<Count> out;
    if (empty()) {
        out.assign(L, Count::of(0));
        return out;
    }
    std::map<Bits, Count> cur;
    cur.emplace(all_states(num_states()), Count::of(1));
    for (std::size_t n = 1; n <= L; ++n) {
        std::map<Bits, Count> nxt;
        for (const auto& [T, c] : cur)
            for (int a = 0; a < alphabet_; ++a) {
                Bits S = successors(*this, T, a);
                if (any_bit(S)) nxt[std::move(S)] += c;
            }
        cur = std::move(nxt);
        Count total = Count::of(0);
        for (const auto& [T, c] : cur) total += c;
        out.push_back(total);
    }
    return out;
}

// ---- free bits ----

namespace {

bool contains_long_runs(const IndexSet& S) {
    using K = IndexSet::Kind;
    return S.kind() == K::Full || S.kind() == K::NonNegative || (S.kind() == K::Power && S.exponent() <= 1.0);
}

// Members relevant to windows of the given diameter: everything up to the
// point past which windows are trivial, plus one member beyond it.
std::vector<std::int64_t> relevant_members(const IndexSet& S, std::int64_t diam) {
    if (S.is_finite()) {
        auto lo = S.min_member(), hi = S.max_member();
        if (!lo) return {};
        return S.members_in(*lo, *hi + 1);
    }
    const std::int64_t lim = S.stable_after(diam) + diam + 1;
    auto m = S.members_in(*S.min_member(), lim);
    auto extra = S.members_in(lim, lim + 1);
    for (std::int64_t hi = lim + 1; extra.empty(); hi = 2 * hi + 1) extra = S.members_in(lim, hi);
    m.push_back(extra.front());
    return m;
}

struct VecHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
        return h;
    }
};

// Maximal supports {i : W_i + t in S} over all translates t, as W-index lists.
std::vector<std::vector<std::size_t>> window_supports(const IndexSet& S, const Shape& W) {
    const std::int64_t wmin = W[0].x, wmax = W.points().back().x;
    const auto mem = relevant_members(S, wmax - wmin + 1);
    std::set<std::int64_t> ts;
    for (auto s : mem)
        for (const auto& w : W) ts.insert(s - w.x);
    std::set<std::vector<std::size_t>> sup;
    for (auto t : ts) {
        std::vector<std::size_t> m;
        auto it = std::lower_bound(mem.begin(), mem.end(), wmin + t);
        for (; it != mem.end() && *it <= wmax + t; ++it) {
            long i = W.index_of({*it - t, 0});
            if (i >= 0) m.push_back(static_cast<std::size_t>(i));
        }
        if (!m.empty()) sup.insert(std::move(m));
    }
    std::vector<std::vector<std::size_t>> all(sup.begin(), sup.end()), out;
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() > b.size() : a < b;
    });
    for (const auto& m : all) {
        bool dominated = false;
        for (const auto& o : out)
            if (std::includes(o.begin(), o.end(), m.begin(), m.end())) { dominated = true; break; }
        if (!dominated) out.push_back(m);
    }
    return out;
}

PatternTable free_bits_language(const IndexSet& S, const Shape& W, const Budget& budget) {
    require_1d_nonempty(W);
    PatternTable t;
    t.shape = W;
    const std::size_t n = W.size();
    if (contains_long_runs(S)) {
        t.lower = t.upper = Count::pow2(n);
        if (n > 62 || (std::uint64_t{1} << n) > budget.table) {
            t.mode = Mode::Bounds;
            return t;
        }
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
            Word w(n);
            for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<std::uint8_t>((m >> (n - 1 - i)) & 1);
            t.rows.push_back(std::move(w));
        }
        std::sort(t.rows.begin(), t.rows.end());
        return t;
    }
    const auto sups = window_supports(S, W);
    long double total = 1;
    std::size_t maxsup = 0;
    for (const auto& m : sups) {
        total += std::ldexp(1.0L, static_cast<int>(m.size()));
        maxsup = std::max(maxsup, m.size());
    }
    if (n > 64 || total > static_cast<long double>(budget.table)) {
        t.mode = Mode::Bounds;
        t.lower = Count::pow2(maxsup);
        Count up = Count::of(1);
        for (const auto& m : sups) up += Count::pow2(m.size());
        Count full = Count::pow2(n);
        t.upper = full < up ? full : up;
        return t;
    }
    std::unordered_set<std::uint64_t> masks;
    masks.insert(0);
    for (const auto& m : sups) {
        std::uint64_t M = 0;
        for (auto i : m) M |= std::uint64_t{1} << i;
        for (std::uint64_t sub = M;; sub = (sub - 1) & M) {
            masks.insert(sub);
            if (sub == 0) break;
        }
    }
    for (auto M : masks) {
        Word w(n, 0);
        for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<std::uint8_t>((M >> i) & 1);
        t.rows.push_back(std::move(w));
    }
    std::sort(t.rows.begin(), t.rows.end());
    t.lower = t.upper = Count::of(t.rows.size());
    return t;
}

}  // namespace

FreeBitsCounter::FreeBitsCounter(const IndexSet& S, std::size_t max_len, const Budget& budget)
    : S_(&S), max_len_(max_len), by_max_(max_len, 0) {
    if (contains_long_runs(S) || S.kind() == IndexSet::Kind::Empty) return;
    const auto L = static_cast<std::int64_t>(max_len);
    const auto mem = relevant_members(S, L);
    long double work = 0;
    for (std::size_t i = 0; i < mem.size(); ++i) {
        std::size_t j = i + 1;
        while (j < mem.size() && mem[j] - mem[i] < L) ++j;
        work += std::ldexp(1.0L, static_cast<int>(j - i - 1));
    }
    if (work > static_cast<long double>(budget.table)) {
        exact_ = false;
        return;
    }
    std::unordered_set<std::vector<std::int64_t>, VecHash> seen;
    for (std::size_t i = 0; i < mem.size(); ++i) {
        std::vector<std::int64_t> nb;
        for (std::size_t j = i + 1; j < mem.size() && mem[j] - mem[i] < L; ++j) nb.push_back(mem[j] - mem[i]);
        const std::size_t k = nb.size();
        for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << k); ++sub) {
            std::vector<std::int64_t> D{0};
            for (std::size_t b = 0; b < k; ++b)
                if ((sub >> b) & 1) D.push_back(nb[b]);
            const auto mx = static_cast<std::size_t>(D.back());
            if (seen.insert(std::move(D)).second) ++by_max_[mx];
        }
    }
}

LanguageSize FreeBitsCounter::count(std::size_t L) const {
    if (L > max_len_) throw Error(ErrorKind::Invariant, "free_bits counter queried beyond prepared length");
    LanguageSize r;
    const IndexSet& S = *S_;
    if (S.kind() == IndexSet::Kind::Empty) {
        r.lower = r.upper = Count::of(1);
        return r;
    }
    if (contains_long_runs(S)) {
        r.lower = r.upper = Count::pow2(L);
        return r;
    }
    if (exact_) {
        Count c = Count::of(1);
        for (std::size_t m = 0; m < L; ++m)
            if (by_max_[m]) c += Count::of(by_max_[m]) * Count::of(L - m);
        r.lower = r.upper = c;
        return r;
    }
    // Certified bounds from window occupancy over all translates.
    r.mode = Mode::Bounds;
    const auto Li = static_cast<std::int64_t>(L);
    const auto mem = relevant_members(S, Li);
    std::size_t best = 0;
    Count up = Count::of(1);
    std::vector<std::pair<std::int64_t, int>> ev;
    for (auto s : mem) {
        ev.push_back({s - Li + 1, +1});
        ev.push_back({s + 1, -1});
    }
    std::sort(ev.begin(), ev.end());
    long cur = 0;
    for (std::size_t i = 0; i < ev.size();) {
        const std::int64_t t = ev[i].first;
        while (i < ev.size() && ev[i].first == t) cur += ev[i++].second;
        const std::int64_t next = i < ev.size() ? ev[i].first : t;
        if (cur > 0) {
            best = std::max(best, static_cast<std::size_t>(cur));
            Count piece = Count::pow2(static_cast<std::size_t>(cur));
            piece.approx -= 1;
            if (!piece.overflow) piece.value -= 1;
            up += piece * Count::of(static_cast<std::uint64_t>(next - t));
        }
    }
    up += Count::of(L);
    Count full = Count::pow2(L);
    r.lower = Count::pow2(best);
    r.upper = full < up ? full : up;
    return r;
}

// ---- language dispatch ----

namespace {

PatternTable sft2d_language(const LanguageSource& X, const Shape& shape, int margin, const Budget& budget) {
    PatternTable t;
    t.shape = shape;
    t.margin = margin;
    const std::size_t A = static_cast<std::size_t>(X.alphabet());
    if (X.forbidden().empty()) {
        long double total = std::pow(static_cast<long double>(A), static_cast<long double>(shape.size()));
        if (total > static_cast<long double>(budget.table))
            throw Error(ErrorKind::Capacity, "pattern table exceeds budget on " + format_shape(shape));
        const std::size_t n = shape.size();
        Word w(n, 0);
        for (;;) {
            t.rows.push_back(w);
            std::size_t i = n;
            while (i > 0 && w[i - 1] + 1u == A) w[--i] = 0;
            if (i == 0) break;
            ++w[i - 1];
        }
        t.lower = t.upper = Count::of(t.rows.size());
        return t;
    }
    t.mode = Mode::LocalUpper;
    const Shape E = shape_product(shape, Shape::box(2, -margin, margin + 1));
    // Placements of each forbidden pattern inside E, keyed by their last point.
    std::vector<std::vector<std::pair<std::vector<std::size_t>, const Word*>>> checks(E.size());
    for (const auto& f : X.forbidden()) {
        const Point f0 = f.shape[0];
        for (const auto& e : E) {
            const Point g = e - f0;
            std::vector<std::size_t> idx;
            bool inside = true;
            for (const auto& p : f.shape) {
                long i = E.index_of(p + g);
                if (i < 0) { inside = false; break; }
                idx.push_back(static_cast<std::size_t>(i));
            }
            if (!inside) continue;
            std::size_t last = *std::max_element(idx.begin(), idx.end());
            checks[last].push_back({std::move(idx), &f.sym});
        }
    }
    std::vector<std::size_t> proj;
    for (const auto& p : shape) proj.push_back(static_cast<std::size_t>(E.index_of(p)));
    std::set<Word> found;
    Word w(E.size(), 0);
    std::uint64_t leaves = 0;
    auto ok_at = [&](std::size_t i) {
        for (const auto& [idx, sym] : checks[i]) {
            bool hit = true;
            for (std::size_t k = 0; k < idx.size(); ++k)
                if (w[idx[k]] != (*sym)[k]) { hit = false; break; }
            if (hit) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == E.size()) {
            if (++leaves > budget.table)
                throw Error(ErrorKind::Capacity, "2-D enumeration exceeds budget on " + format_shape(shape));
            Word r(proj.size());
            for (std::size_t k = 0; k < proj.size(); ++k) r[k] = w[proj[k]];
            found.insert(std::move(r));
            return;
        }
        for (std::size_t a = 0; a < A; ++a) {
            w[i] = static_cast<std::uint8_t>(a);
            if (ok_at(i)) self(self, i + 1);
        }
    };
    rec(rec, 0);
    t.rows.assign(found.begin(), found.end());
    t.empty_language = t.rows.empty();
    t.lower = t.upper = Count::of(t.rows.size());
    return t;
}

std::vector<int> radices_of(const LanguageSource& X) {
    std::vector<int> r;
    for (const auto& f : X.factors()) r.push_back(f.alphabet());
    return r;
}

}  // namespace

PatternTable language(const LanguageSource& X, const Shape& shape, int margin, const Budget& budget) {
    if (shape.empty()) throw Error(ErrorKind::EmptyShape, "language of empty shape");
    if (margin < 0) throw Error(ErrorKind::Config, "negative margin");
    if (shape.dim() != X.dim()) throw Error(ErrorKind::DimensionMismatch, "shape vs system dimension");
    switch (X.kind()) {
    case LanguageSource::Kind::Sft:
        if (X.dim() == 1) return SftGraph(X).language(shape, budget);
        return sft2d_language(X, shape, margin, budget);
    case LanguageSource::Kind::FreeBits: return free_bits_language(X.index_set(), shape, budget);
    case LanguageSource::Kind::Product: {
        std::vector<PatternTable> parts;
        Mode mode = Mode::Exact;
        long double total = 1;
        for (const auto& f : X.factors()) {
            parts.push_back(language(f, shape, margin, budget));
            if (parts.back().mode == Mode::Bounds)
                throw Error(ErrorKind::Capacity, "product factor table not materialized");
            if (parts.back().mode == Mode::LocalUpper) mode = Mode::LocalUpper;
            total *= static_cast<long double>(parts.back().size());
        }
        if (total > static_cast<long double>(budget.table))
            throw Error(ErrorKind::Capacity, "product table exceeds budget");
        const auto rad = radices_of(X);
        std::vector<Word> rows{Word(shape.size(), 0)};
        for (std::size_t f = 0; f < parts.size(); ++f) {
            std::vector<Word> next;
            for (const auto& r : rows)
                for (const auto& p : parts[f].rows) {
                    Word w = r;
                    for (std::size_t i = 0; i < w.size(); ++i)
                        w[i] = static_cast<std::uint8_t>(w[i] * rad[f] + p[i]);
                    next.push_back(std::move(w));
                }
            rows = std::move(next);
        }
        std::sort(rows.begin(), rows.end());
        PatternTable t;
        t.shape = shape;
        t.margin = margin;
        t.mode = mode;
        t.rows = std::move(rows);
        t.empty_language = t.rows.empty();
        t.lower = t.upper = Count::of(t.rows.size());
        return t;
    }
    }
    throw Error(ErrorKind::Invariant, "unknown source kind");
}

LanguageSize language_size(const LanguageSource& X, const Shape& shape, const Budget& budget) {
    if (shape.empty()) throw Error(ErrorKind::EmptyShape, "language of empty shape");
    LanguageSize r;
    switch (X.kind()) {
    case LanguageSource::Kind::Sft:
        if (X.dim() == 1) {
            r.lower = r.upper = SftGraph(X).count(shape);
            return r;
        }
        break;
    case LanguageSource::Kind::FreeBits:
        if (shape.is_interval()) return FreeBitsCounter(X.index_set(), shape.size(), budget).count(shape.size());
        break;
    case LanguageSource::Kind::Product: {
        r.lower = r.upper = Count::of(1);
        for (const auto& f : X.factors()) {
            LanguageSize s = language_size(f, shape, budget);
            r.lower = r.lower * s.lower;
            r.upper = r.upper * s.upper;
            if (s.mode != Mode::Exact && r.mode != Mode::Bounds) r.mode = s.mode;
        }
        return r;
    }
    }
    PatternTable t = language(X, shape, 0, budget);
    r.lower = t.lower;
    r.upper = t.upper;
    r.mode = t.mode;
    return r;
}

// ---- block codes ----

BlockCode::BlockCode(Shape window, int in_alphabet, int out_alphabet, std::vector<std::uint8_t> rule)
    : window_(std::move(window)), in_(in_alphabet), out_(out_alphabet), rule_(std::move(rule)) {
    if (!window_.contains(Point{})) throw Error(ErrorKind::Config, "code window must contain the origin");
    long double expect = std::pow(static_cast<long double>(in_), static_cast<long double>(window_.size()));
    if (static_cast<long double>(rule_.size()) != expect) throw Error(ErrorKind::Config, "rule table size mismatch");
    for (auto c : rule_)
        if (c != 255 && c >= out_) throw Error(ErrorKind::Config, "rule output outside codomain alphabet");
}

BlockCode BlockCode::identity(int alphabet, int dim) {
    std::vector<std::uint8_t> rule(static_cast<std::size_t>(alphabet));
    for (int a = 0; a < alphabet; ++a) rule[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(a);
    return BlockCode(Shape(dim, {Point{}}), alphabet, alphabet, std::move(rule));
}

BlockCode BlockCode::xor_code() {
    return BlockCode(Shape::interval(0, 2), 2, 2, {0, 1, 1, 0});
}

BlockCode BlockCode::constant(int in_alphabet, std::uint8_t c, int out_alphabet, int dim) {
    return BlockCode(Shape(dim, {Point{}}), in_alphabet, out_alphabet,
                     std::vector<std::uint8_t>(static_cast<std::size_t>(in_alphabet), c));
}

BlockCode BlockCode::projection(const std::vector<int>& radices, std::size_t which, int dim) {
    int total = 1;
    for (int r : radices) total *= r;
    int below = 1;
    for (std::size_t i = which + 1; i < radices.size(); ++i) below *= radices[i];
    std::vector<std::uint8_t> rule(static_cast<std::size_t>(total));
    for (int s = 0; s < total; ++s) rule[static_cast<std::size_t>(s)] = static_cast<std::uint8_t>((s / below) % radices[which]);
    return BlockCode(Shape(dim, {Point{}}), total, radices[which], std::move(rule));
}

BlockCode BlockCode::from_map(Shape window, int in_alphabet, int out_alphabet,
                              const std::map<std::string, std::string>& rule) {
    const std::size_t n = window.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::size_t>(in_alphabet);
    std::vector<std::uint8_t> table(total, 255);
    for (const auto& [k, v] : rule) {
        Word w = parse_word(k), o = parse_word(v);
        if (w.size() != n || o.size() != 1) throw Error(ErrorKind::Config, "rule entry '" + k + "' has wrong length");
        std::size_t idx = 0;
        for (auto c : w) {
            if (c >= in_alphabet) throw Error(ErrorKind::Config, "rule key symbol outside alphabet");
            idx = idx * static_cast<std::size_t>(in_alphabet) + c;
        }
        table[idx] = o[0];
    }
    return BlockCode(std::move(window), in_alphabet, out_alphabet, std::move(table));
}

std::uint8_t BlockCode::eval_word(const Word& w) const {
    std::size_t idx = 0;
    for (auto c : w) idx = idx * static_cast<std::size_t>(in_) + c;
    std::uint8_t r = rule_[idx];
    if (r == 255) throw Error(ErrorKind::Config, "block code undefined on window pattern " + word_string(w));
    return r;
}

std::uint8_t BlockCode::eval(const Pattern& p, const Point& g) const {
    Word w;
    w.reserve(window_.size());
    for (const auto& o : window_) w.push_back(p.at(g + o));
    return eval_word(w);
}

BlockCode compose(const BlockCode& outer, const BlockCode& inner) {
    if (outer.in_alphabet() != inner.out_alphabet())
        throw Error(ErrorKind::Config, "composition alphabet mismatch");
    Shape W = shape_product(outer.window(), inner.window());
    const std::size_t A = static_cast<std::size_t>(inner.in_alphabet());
    std::size_t total = 1;
    for (std::size_t i = 0; i < W.size(); ++i) {
        total *= A;
        if (total > (std::size_t{1} << 22)) throw Error(ErrorKind::Capacity, "composed window too large");
    }
    std::vector<std::uint8_t> rule(total, 255);
    Pattern p{W, Word(W.size(), 0)};
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t i = W.size(); i-- > 0;) {
            p.sym[i] = static_cast<std::uint8_t>(c % A);
            c /= A;
        }
        try {
            Word y;
            for (const auto& o : outer.window()) y.push_back(inner.eval(p, o));
            rule[code] = outer.eval_word(y);
        } catch (const Error&) {
            rule[code] = 255;
        }
    }
    return BlockCode(W, inner.in_alphabet(), outer.out_alphabet(), std::move(rule));
}

Pattern apply_code(const BlockCode& code, const Pattern& p) {
    return apply_code(code, p, erode(p.shape, code.window()));
}

Pattern apply_code(const BlockCode& code, const Pattern& p, const Shape& out_shape) {
    std::vector<Point> missing;
    for (const auto& g : out_shape)
        for (const auto& w : code.window())
            if (!p.shape.contains(g + w)) missing.push_back(g + w);
    if (!missing.empty()) {
        Shape m(out_shape.dim(), missing);
        throw Error(ErrorKind::Margin, "input pattern lacks points " + format_shape(m));
    }
    Pattern out{out_shape, Word(out_shape.size())};
    for (std::size_t i = 0; i < out_shape.size(); ++i) out.sym[i] = code.eval(p, out_shape[i]);
    return out;
}

PatternTable fiber_patterns(const LanguageSource& X, const BlockCode& code, const Pattern& y_pat,
                            const Shape& shape, const Budget& budget) {
    if (!is_subset(y_pat.shape, erode(shape, code.window())))
        throw Error(ErrorKind::Margin, "y pattern not inside the eroded shape");
    PatternTable all = language(X, shape, 0, budget);
    PatternTable t;
    t.shape = shape;
    t.mode = all.mode;
    t.margin = all.margin;
    for (const auto& r : all.rows) {
        Pattern p{shape, r};
        if (apply_code(code, p, y_pat.shape).sym == y_pat.sym) t.rows.push_back(r);
    }
    t.unreachable = t.rows.empty();
    t.lower = t.upper = Count::of(t.rows.size());
    return t;
}

// ---- points ----

PointSpec PointSpec::periodic(const std::string& word) {
    PointSpec x;
    x.kind = Kind::Periodic;
    Word w = parse_word(word);
    if (w.empty()) throw Error(ErrorKind::Config, "periodic word must be non-empty");
    x.period = {w};
    return x;
}

PointSpec PointSpec::finite_support(std::uint8_t background, std::map<Point, std::uint8_t> exc, int dim) {
    PointSpec x;
    x.kind = Kind::FiniteSupport;
    x.dim = dim;
    x.background = background;
    x.exceptions = std::move(exc);
    return x;
}

std::uint8_t PointSpec::at(const Point& g) const {
    if (kind == Kind::FiniteSupport) {
        auto it = exceptions.find(g);
        return it == exceptions.end() ? background : it->second;
    }
    auto md = [](std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; };
    const Word& row = period[static_cast<std::size_t>(md(g.y, static_cast<std::int64_t>(period.size())))];
    return row[static_cast<std::size_t>(md(g.x, static_cast<std::int64_t>(row.size())))];
}

std::string PointSpec::describe() const {
    if (kind == Kind::Periodic) {
        std::string s = "(";
        for (std::size_t i = 0; i < period.size(); ++i) s += (i ? "/" : "") + word_string(period[i]);
        return s + ")^inf";
    }
    std::string s = std::to_string(background) + "^inf{";
    bool first = true;
    for (const auto& [p, c] : exceptions) {
        s += (first ? "" : ",") + format_point(p, dim) + ":" + std::to_string(c);
        first = false;
    }
    return s + "}";
}

Pattern point_pattern(const PointSpec& x, const Shape& shape) {
    Pattern p{shape, Word(shape.size())};
    for (std::size_t i = 0; i < shape.size(); ++i) p.sym[i] = x.at(shape[i]);
    return p;
}

// ---- factors ----

Factor Factor::trivial(const LanguageSource& X) {
    return {X, LanguageSource::full_shift(1, X.dim()), BlockCode::constant(X.alphabet(), 0, 1, X.dim())};
}

Factor Factor::identity(const LanguageSource& X) {
    return {X, X, BlockCode::identity(X.alphabet(), X.dim())};
}

void validate_factor(const Factor& f, std::size_t test_len) {
    if (f.code.in_alphabet() != f.X.alphabet() || f.code.out_alphabet() != f.Y.alphabet())
        throw Error(ErrorKind::Config, "code alphabets do not match the factor systems");
    Shape F = Shape::box(f.X.dim(), 0, static_cast<std::int64_t>(test_len));
    Shape D = shape_product(F, f.code.window());
    PatternTable src = language(f.X, D);
    PatternTable dst = language(f.Y, F);
    for (const auto& r : src.rows) {
        Pattern y = apply_code(f.code, Pattern{D, r}, F);
        if (dst.find(y.sym) < 0)
            throw Error(ErrorKind::Invariant,
                        "code image " + word_string(y.sym) + " not in codomain language");
    }
}

Factor FactorTriple::factor_Y() const {
    if (!pi_Y) throw Error(ErrorKind::Config, "triple lacks pi_Y");
    return {Y, Z, *pi_Y};
}

Factor FactorTriple::factor_pi() const {
    if (!pi) throw Error(ErrorKind::Config, "triple lacks pi");
    return {X, Y, *pi};
}

bool FactorTriple::commutes(const Budget& budget) const {
    if (!pi || !pi_Y) return true;
    Shape D = shape_union(shape_product(pi->window(), pi_Y->window()), pi_X.window());
    PatternTable t = language(X, D, 0, budget);
    for (const auto& r : t.rows) {
        Pattern p{D, r};
        Pattern y = apply_code(*pi, p, pi_Y->window());
        if (pi_Y->eval(y, Point{}) != pi_X.eval(p, Point{})) return false;
    }
    return true;
}

}  // namespace endim
