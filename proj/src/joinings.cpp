#include "endim/joinings.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "endim/parallel.hpp"

namespace endim {

namespace {

using Bits = std::vector<std::uint64_t>;

std::vector<Word> all_words(int alphabet, std::size_t len) {
    double total = std::pow(static_cast<double>(alphabet), static_cast<double>(len));
    if (total > static_cast<double>(1 << 20)) throw Error(ErrorKind::Capacity, "too many window words");
    std::vector<Word> out;
    Word w(len, 0);
    for (;;) {
        out.push_back(w);
        std::size_t i = len;
        while (i > 0 && w[i - 1] == alphabet - 1) w[--i] = 0;
        if (i == 0) break;
        ++w[i - 1];
    }
    return out;
}

std::vector<Pattern> as_patterns(const std::vector<Word>& ws) {
    std::vector<Pattern> out;
    for (const auto& w : ws) out.push_back({Shape::interval(0, static_cast<std::int64_t>(w.size())), w});
    return out;
}

// Edge labels of an SFT graph under an optional block code or track projection.
struct Labeling {
    const BlockCode* code = nullptr;
    int ay = 0, track = -1;
    int out_alphabet(const SftGraph& g) const {
        if (code) return code->out_alphabet();
        if (track == 0) return g.alphabet() / ay;
        if (track == 1) return ay;
        return g.alphabet();
    }
    int label(const SftGraph& g, std::size_t s, int a) const {
        if (code) {
            const Shape& W = code->window();
            const std::int64_t lo = W.min_corner().x, span = W.max_corner().x - lo + 1;
            Word full = g.state_word(s);
            full.push_back(static_cast<std::uint8_t>(a));
            const std::size_t off = full.size() - static_cast<std::size_t>(span);
            Word w;
            for (const auto& p : W) w.push_back(full[off + static_cast<std::size_t>(p.x - lo)]);
            return code->eval_word(w);
        }
        if (track == 0) return a / ay;
        if (track == 1) return a % ay;
        return a;
    }
};

Dfa determinize(const SftGraph& g, const Labeling& lab) {
    Dfa d;
    d.alphabet = lab.out_alphabet(g);
    if (g.empty()) return d;
    const std::size_t n = g.num_states(), words = (n + 63) / 64;
    std::map<Bits, int> id;
    std::vector<Bits> sets;
    Bits init(words, 0);
    for (std::size_t s = 0; s < n; ++s) init[s / 64] |= std::uint64_t{1} << (s % 64);
    id[init] = 0;
    sets.push_back(init);
    d.start = 0;
    for (std::size_t q = 0; q < sets.size(); ++q) {
        std::vector<Bits> out(static_cast<std::size_t>(d.alphabet), Bits(words, 0));
        for (std::size_t s = 0; s < n; ++s) {
            if (!(sets[q][s / 64] >> (s % 64) & 1)) continue;
            for (int a = 0; a < g.alphabet(); ++a) {
                int t = g.next(s, a);
                if (t < 0) continue;
                out[static_cast<std::size_t>(lab.label(g, s, a))][static_cast<std::size_t>(t) / 64] |=
                    std::uint64_t{1} << (t % 64);
            }
        }
        for (int b = 0; b < d.alphabet; ++b) {
            auto& T = out[static_cast<std::size_t>(b)];
            int tid = -1;
            if (std::any_of(T.begin(), T.end(), [](auto x) { return x != 0; })) {
                auto [it, fresh] = id.emplace(T, static_cast<int>(sets.size()));
                if (fresh) {
                    sets.push_back(T);
                    if (sets.size() > (1u << 20)) throw Error(ErrorKind::Capacity, "subset construction too large");
                }
                tid = it->second;
            }
            d.trans.push_back(tid);
        }
    }
    return d;
}

std::vector<Word> complement(const std::vector<Word>& all, const std::vector<Word>& keep) {
    std::vector<Word> out;
    std::set_difference(all.begin(), all.end(), keep.begin(), keep.end(), std::back_inserter(out));
    return out;
}

// Visits index combinations of size k out of n in lexicographic order.
template <class Fn>
void for_combinations(std::size_t n, std::size_t k, Fn&& fn) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        if (!fn(idx)) return;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

LanguageSource as_sft(const LanguageSource& X) {
    if (X.dim() != 1) throw Error(ErrorKind::UnsupportedDimension, "automaton tools are 1-D");
    if (X.kind() == LanguageSource::Kind::Sft) return X;
    if (X.kind() == LanguageSource::Kind::FreeBits)
        throw Error(ErrorKind::Config, "free_bits sources are not of finite type");
    std::int64_t m = 1;
    for (const auto& f : X.factors()) m = std::max(m, as_sft(f).window_span());
    const Shape win = Shape::interval(0, m);
    PatternTable L = language(X, win);
    return LanguageSource::sft(X.alphabet(), 1, as_patterns(complement(all_words(X.alphabet(), win.size()), L.rows)));
}

Dfa minimize(const Dfa& d) {
    if (d.start < 0) return d;
    const std::size_t n = d.size(), A = static_cast<std::size_t>(d.alphabet);
    std::vector<int> cls(n, 0);
    std::size_t ncls = 1;
    for (;;) {
        std::map<std::vector<int>, int> sig;
        std::vector<int> next(n);
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<int> k{cls[s]};
            for (std::size_t a = 0; a < A; ++a) {
                int t = d.trans[s * A + a];
                k.push_back(t < 0 ? -1 : cls[static_cast<std::size_t>(t)]);
            }
            next[s] = sig.emplace(std::move(k), static_cast<int>(sig.size())).first->second;
        }
        cls = std::move(next);
        if (sig.size() == ncls) break;
        ncls = sig.size();
    }
    // Renumber in BFS order from the start for a canonical form.
    std::vector<int> order(ncls, -1);
    std::vector<std::size_t> rep(ncls);
    for (std::size_t s = 0; s < n; ++s) rep[static_cast<std::size_t>(cls[s])] = s;
    Dfa m;
    m.alphabet = d.alphabet;
    m.start = 0;
    std::queue<int> q;
    order[static_cast<std::size_t>(cls[static_cast<std::size_t>(d.start)])] = 0;
    q.push(cls[static_cast<std::size_t>(d.start)]);
    int fresh = 1;
    std::vector<int> seq;
    while (!q.empty()) {
        int c = q.front();
        q.pop();
        seq.push_back(c);
        for (std::size_t a = 0; a < A; ++a) {
            int t = d.trans[rep[static_cast<std::size_t>(c)] * A + a];
            if (t < 0) continue;
            int tc = cls[static_cast<std::size_t>(t)];
            if (order[static_cast<std::size_t>(tc)] < 0) {
                order[static_cast<std::size_t>(tc)] = fresh++;
                q.push(tc);
            }
        }
    }
    for (int c : seq)
        for (std::size_t a = 0; a < A; ++a) {
            int t = d.trans[rep[static_cast<std::size_t>(c)] * A + a];
            m.trans.push_back(t < 0 ? -1 : order[static_cast<std::size_t>(cls[static_cast<std::size_t>(t)])]);
        }
    return m;
}

Dfa language_dfa(const LanguageSource& X, const BlockCode* code) {
    const LanguageSource S = as_sft(X);
    int mem = 1;
    if (code) {
        const Shape& W = code->window();
        mem = static_cast<int>(W.max_corner().x - W.min_corner().x);
        if (code->in_alphabet() != S.alphabet()) throw Error(ErrorKind::Config, "code input alphabet mismatch");
    }
    SftGraph g(S, mem);
    Labeling lab;
    lab.code = code;
    return minimize(determinize(g, lab));
}

Dfa track_dfa(const LanguageSource& J, int ay, int track) {
    SftGraph g(as_sft(J));
    Labeling lab;
    lab.ay = ay;
    lab.track = track;
    return minimize(determinize(g, lab));
}

std::optional<Word> distinguishing_word(const Dfa& a, const Dfa& b) {
    const int A = std::max(a.alphabet, b.alphabet);
    auto step = [](const Dfa& d, int s, int x) {
        if (s < 0 || x >= d.alphabet) return -1;
        return d.trans[static_cast<std::size_t>(s) * static_cast<std::size_t>(d.alphabet) + static_cast<std::size_t>(x)];
    };
    using P = std::pair<int, int>;
    std::map<P, std::pair<P, int>> parent;
    std::queue<P> q;
    const P s0{a.start, b.start};
    parent[s0] = {s0, -1};
    q.push(s0);
    while (!q.empty()) {
        P p = q.front();
        q.pop();
        if ((p.first >= 0) != (p.second >= 0)) {
            Word w;
            for (P c = p; parent[c].second >= 0; c = parent[c].first) w.push_back(static_cast<std::uint8_t>(parent[c].second));
            std::reverse(w.begin(), w.end());
            return w;
        }
        if (p.first < 0 && p.second < 0) continue;
        for (int x = 0; x < A; ++x) {
            P t{step(a, p.first, x), step(b, p.second, x)};
            if (parent.emplace(t, std::make_pair(p, x)).second) q.push(t);
        }
    }
    return std::nullopt;
}

FiberProduct fiber_product(const LanguageSource& X, const LanguageSource& Y, const LanguageSource& Z,
                           const BlockCode& pi_X, const BlockCode& pi_Y) {
    FiberProduct fp{as_sft(X), as_sft(X), as_sft(Y), Z, pi_X, pi_Y, X.alphabet(), Y.alphabet(), 1};
    if (pi_X.in_alphabet() != X.alphabet() || pi_Y.in_alphabet() != Y.alphabet())
        throw Error(ErrorKind::Config, "factor codes do not read the component alphabets");
    if (pi_X.out_alphabet() != pi_Y.out_alphabet() || pi_X.out_alphabet() != Z.alphabet())
        throw Error(ErrorKind::Config, "incompatible factor alphabets");
    if (fp.ax * fp.ay > 255) throw Error(ErrorKind::Capacity, "pair alphabet above 255");
    const Shape& WX = pi_X.window();
    const Shape& WY = pi_Y.window();
    const std::int64_t lo = std::min(WX.min_corner().x, WY.min_corner().x);
    const std::int64_t hi = std::max(WX.max_corner().x, WY.max_corner().x);
    const std::int64_t m = std::max({fp.X.window_span(), fp.Y.window_span(), hi - lo + 1});
    fp.window = static_cast<std::size_t>(m);
    const Shape win = Shape::interval(0, m);
    PatternTable LX = language(fp.X, win), LY = language(fp.Y, win);
    std::vector<Word> bad;
    for (const auto& w : all_words(fp.ax * fp.ay, fp.window)) {
        Word x(w.size()), y(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            x[i] = static_cast<std::uint8_t>(w[i] / fp.ay);
            y[i] = static_cast<std::uint8_t>(w[i] % fp.ay);
        }
        bool ok = LX.find(x) >= 0 && LY.find(y) >= 0;
        for (std::int64_t g = -lo; ok && g + hi < m; ++g) {
            Word a, b;
            for (const auto& p : WX) a.push_back(x[static_cast<std::size_t>(g + p.x)]);
            for (const auto& p : WY) b.push_back(y[static_cast<std::size_t>(g + p.x)]);
            ok = pi_X.eval_word(a) == pi_Y.eval_word(b);
        }
        if (!ok) bad.push_back(w);
    }
    fp.sft = LanguageSource::sft(fp.ax * fp.ay, 1, as_patterns(bad));
    return fp;
}

std::string pair_word(const Word& w, int ay) {
    std::string s;
    for (auto c : w) s += "(" + std::to_string(c / ay) + "," + std::to_string(c % ay) + ")";
    return s;
}

LanguageSource candidate_system(const FiberProduct& fp, const JoiningCandidate& c) {
    auto fs = fp.sft.forbidden();
    for (const auto& w : c.forbidden) {
        if (w.size() != c.window) throw Error(ErrorKind::Config, "forbidden word length differs from window");
        fs.push_back({Shape::interval(0, static_cast<std::int64_t>(w.size())), w});
    }
    return LanguageSource::sft(fp.sft.alphabet(), 1, std::move(fs));
}

JoiningReport joining_check(const FiberProduct& fp, const JoiningCandidate& c) {
    JoiningReport r;
    r.window = c.window;
    const LanguageSource J = candidate_system(fp, c);
    if (SftGraph(J).empty()) return r;
    r.nonempty = true;
    r.missing_X = distinguishing_word(track_dfa(J, fp.ay, 0), language_dfa(fp.X));
    r.missing_Y = distinguishing_word(track_dfa(J, fp.ay, 1), language_dfa(fp.Y));
    r.is_joining = !r.missing_X && !r.missing_Y;
    r.proper_witness = distinguishing_word(language_dfa(J), language_dfa(fp.sft));
    r.is_proper = r.is_joining && r.proper_witness.has_value();
    return r;
}

JoiningSearchResult proper_joining_search(const FiberProduct& fp, std::size_t w_max, const Budget& budget) {
    JoiningSearchResult res;
    for (std::size_t w = 1; w <= w_max; ++w) {
        const PatternTable L = language(fp.sft, Shape::interval(0, static_cast<std::int64_t>(w)));
        const std::size_t n = L.rows.size();
        if (n > 20) {
            res.frontier = "window " + std::to_string(w) + " has " + std::to_string(n) + " words";
            return res;
        }
        for (std::size_t k = 1; k < n; ++k) {
            std::vector<std::vector<std::size_t>> combos;
            for_combinations(n, k, [&](const std::vector<std::size_t>& idx) {
                combos.push_back(idx);
                return true;
            });
            if (res.checked + combos.size() > budget.nodes) {
                res.frontier = "window " + std::to_string(w) + ", allowed-set size " + std::to_string(k) + " after " +
                               std::to_string(res.checked) + " candidates";
                return res;
            }
            std::vector<JoiningCandidate> cands(combos.size());
            std::vector<JoiningReport> reps(combos.size());
            parallel_for(combos.size(), [&](std::size_t i) {
                std::vector<Word> keep;
                for (auto j : combos[i]) keep.push_back(L.rows[j]);
                cands[i] = {complement(L.rows, keep), w};
                reps[i] = joining_check(fp, cands[i]);
            });
            res.checked += combos.size();
            for (std::size_t i = 0; i < reps.size(); ++i)
                if (reps[i].is_proper) {
                    res.found = true;
                    res.witness = cands[i];
                    res.report = reps[i];
                    res.window = w;
                    return res;
                }
        }
        res.window = w;
    }
    res.exhausted = true;
    return res;
}

ProbeReport factor_probe(const Factor& f, ProbeKind kind, std::size_t w, const Budget& budget) {
    ProbeReport r;
    r.window = w;
    const LanguageSource X = as_sft(f.X);
    const BlockCode& code = f.code;
    if (kind == ProbeKind::Minimal) {
        const Dfa dX = language_dfa(X), dY = language_dfa(f.Y);
        for (std::size_t l = 1; l <= w && !r.violation; ++l) {
            const PatternTable L = language(X, Shape::interval(0, static_cast<std::int64_t>(l)));
            if (L.rows.size() > 20) break;
            for (std::size_t k = 1; k < L.rows.size() && !r.violation; ++k)
                for_combinations(L.rows.size(), k, [&](const std::vector<std::size_t>& idx) {
                    if (++r.checked > budget.nodes) return false;
                    std::vector<Word> keep;
                    for (auto j : idx) keep.push_back(L.rows[j]);
                    auto fs = X.forbidden();
                    for (const auto& p : as_patterns(complement(L.rows, keep))) fs.push_back(p);
                    const LanguageSource J = LanguageSource::sft(X.alphabet(), 1, fs);
                    if (SftGraph(J).empty()) return true;
                    if (!distinguishing_word(language_dfa(J), dX)) return true;  // not proper
                    if (distinguishing_word(language_dfa(J, &code), dY)) return true;
                    r.violation = true;
                    std::string s;
                    for (const auto& kw : keep) s += (s.empty() ? "" : ",") + word_string(kw);
                    r.witness = "proper subshift allowing {" + s + "} has full image";
                    return false;
                });
        }
    } else {
        const Shape& Wc = code.window();
        const std::int64_t lo = Wc.min_corner().x, span = Wc.max_corner().x - lo + 1;
        const auto e = static_cast<std::int64_t>(w);
        for (std::size_t l = 1; l <= w && !r.violation; ++l) {
            const auto L = static_cast<std::int64_t>(l);
            // Images on E2 compared through their restriction to the inner window [-e, L + e).
            const Shape E2 = Shape::interval(-2 * e, L + 2 * e);
            const Shape H = Shape::interval(-2 * e + lo, L + 2 * e + lo + span - 1);
            const PatternTable P = language(X, H, 0, budget);
            std::map<Word, std::set<Word>> img;  // u -> images on E2
            std::set<Word> all;
            const auto u_at = static_cast<std::size_t>(2 * e - lo);
            for (const auto& row : P.rows) {
                Word y = apply_code(code, Pattern{H, row}, E2).sym;
                Word u(row.begin() + static_cast<long>(u_at), row.begin() + static_cast<long>(u_at + l));
                img[u].insert(y);
                all.insert(y);
            }
            const std::size_t cut = static_cast<std::size_t>(e);
            auto inner = [&](const Word& y) { return Word(y.begin() + static_cast<long>(cut), y.end() - static_cast<long>(cut)); };
            for (const auto& [u, ys] : img) {
                ++r.checked;
                std::set<Word> onE;
                for (const auto& y : ys) onE.insert(inner(y));
                for (const auto& y : all)
                    if (onE.count(inner(y)) && !ys.count(y)) {
                        r.violation = true;
                        r.witness = "image of [" + word_string(u) + "] is not a union of cylinders at radius " +
                                    std::to_string(w) + ": " + word_string(y);
                        break;
                    }
                if (r.violation) break;
            }
        }
    }
    r.verdict = r.violation ? "violation found" : "no violation up to " + std::to_string(w);
    return r;
}

}  // namespace endim
