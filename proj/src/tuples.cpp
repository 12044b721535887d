#include "endim/tuples.hpp"

#include <algorithm>
#include <random>

namespace endim {

std::string TupleSpec::describe() const {
    std::string s = "(";
    for (std::size_t i = 0; i < points.size(); ++i) s += (i ? ", " : "") + points[i].describe();
    return s + ")";
}

int ball_radius(std::size_t k) {
    if (k == 0) throw Error(ErrorKind::Config, "k must be positive");
    int r = 0;
    while ((std::size_t{1} << r) < k) ++r;
    return r;
}

namespace {

Shape ball(int dim, int R) { return dim == 1 ? Shape::interval(-R, R + 1) : Shape::box(2, -R, R + 1); }

}  // namespace

ClopenCover ball_cover(const LanguageSource& X, const TupleSpec& t, int R) {
    if (t.points.size() < 2) throw Error(ErrorKind::Config, "tuples need at least two points");
    const Shape base = ball(X.dim(), R);
    PatternTable L = language(X, base);
    std::vector<Word> centers;
    for (std::size_t i = 0; i < t.points.size(); ++i) {
        Word w = point_pattern(t.points[i], base).sym;
        if (L.find(w) < 0)
            throw Error(ErrorKind::Config, "point " + std::to_string(i) + " leaves X on " + format_shape(base));
        for (std::size_t j = 0; j < i; ++j)
            if (centers[j] == w)
                throw Error(ErrorKind::Degenerate, "points " + std::to_string(j) + " and " + std::to_string(i) +
                                                       " agree at radius " + std::to_string(R));
        centers.push_back(std::move(w));
    }
    std::vector<std::vector<Word>> elems;
    for (const auto& c : centers) {
        std::vector<Word> e;
        for (const auto& r : L.rows)
            if (r != c) e.push_back(r);
        elems.push_back(std::move(e));
    }
    return make_cover(base, elems);
}

TupleDimensionReport tuple_dimension(const Factor& f, const TupleSpec& t, const std::vector<std::size_t>& ks,
                                     const FolnerSequence& F, std::size_t n_max, const Budget& budget,
                                     const EstimatorOptions& opt) {
    if (ks.empty()) throw Error(ErrorKind::Config, "empty k range");
    const std::size_t kmax = *std::max_element(ks.begin(), ks.end());
    ball_cover(f.X, t, ball_radius(kmax));  // distinctness at the largest radius
    TupleDimensionReport r;
    auto sorted = ks;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (auto k : sorted) {
        const int R = ball_radius(k);
        r.rows.push_back({k, R, cover_dimension(f, ball_cover(f.X, t, R), F, n_max, budget, opt)});
    }
    for (std::size_t i = 1; i < r.rows.size(); ++i)
        if (r.rows[i].report.estimate.upper > r.rows[i - 1].report.estimate.upper + 1e-12) r.monotone = false;
    r.tail = r.rows.back().report.estimate.upper;
    return r;
}

DimensionSetSample dimension_set_sample(const Factor& f, const std::vector<TupleSpec>& tuples,
                                        const std::vector<std::size_t>& ks, const FolnerSequence& F,
                                        std::size_t n_max, double threshold, const Budget& budget,
                                        const EstimatorOptions& opt) {
    if (tuples.empty()) throw Error(ErrorKind::Config, "no tuples to sample");
    DimensionSetSample s;
    s.tuples = tuples;
    s.threshold = threshold;
    s.histogram.assign(10, 0);
    s.all_above = true;
    for (const auto& t : tuples) {
        try {
            auto r = tuple_dimension(f, t, ks, F, n_max, budget, opt);
            const auto& e = r.rows.back().report.estimate;
            if (e.degenerate) {
                s.values.push_back(std::nullopt);
                s.notes.push_back("degenerate: " + e.note);
                s.all_above = false;
                continue;
            }
            s.values.push_back(r.tail);
            s.notes.emplace_back();
            s.histogram[std::min<std::size_t>(9, static_cast<std::size_t>(r.tail * 10))]++;
            s.all_above = s.all_above && r.tail >= threshold;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Degenerate) throw;
            s.values.push_back(std::nullopt);
            s.notes.push_back(e.what());
            s.all_above = false;
        }
    }
    return s;
}

std::vector<TupleSpec> sample_tuples(const LanguageSource& X, std::size_t count, std::size_t arity,
                                     std::size_t max_period, int R, std::uint64_t seed) {
    if (X.dim() != 1) throw Error(ErrorKind::UnsupportedDimension, "tuple sampling is 1-D");
    if (arity < 2 || max_period < 1) throw Error(ErrorKind::Config, "need arity >= 2 and a positive period");
    std::mt19937_64 rng(seed);
    const Shape base = Shape::interval(-R, R + 1);
    auto admissible = [&](const std::string& w) {
        const auto span = static_cast<std::int64_t>(w.size() * 3 + static_cast<std::size_t>(X.window_span()));
        Shape win = Shape::interval(0, span);
        PatternTable L = language(X, win);
        return L.find(point_pattern(PointSpec::periodic(w), win).sym) >= 0;
    };
    std::vector<TupleSpec> out;
    for (std::size_t tries = 0; out.size() < count && tries < count * 200; ++tries) {
        TupleSpec t;
        std::vector<Word> centers;
        bool ok = true;
        for (std::size_t i = 0; i < arity && ok; ++i) {
            const std::size_t p = 1 + rng() % max_period;
            std::string w;
            for (std::size_t j = 0; j < p; ++j) w += static_cast<char>('0' + rng() % static_cast<unsigned>(X.alphabet()));
            if (!admissible(w)) {
                ok = false;
                break;
            }
            auto P = PointSpec::periodic(w);
            Word c = point_pattern(P, base).sym;
            ok = std::find(centers.begin(), centers.end(), c) == centers.end();
            centers.push_back(c);
            t.points.push_back(P);
        }
        if (ok) out.push_back(std::move(t));
    }
    if (out.size() < count) throw Error(ErrorKind::Capacity, "could not sample enough distinct tuples");
    return out;
}

}  // namespace endim
