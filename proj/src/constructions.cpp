#include <algorithm>
#include <cmath>

#include "endim/dimension.hpp"

namespace endim {

namespace {

std::size_t floor_pow(std::size_t s, double a) {
    return static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(s), a) + 1e-9));
}

IndexSet as_index_set(int dim, std::vector<Point> pts, const std::string& label) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return IndexSet::explicit_points(dim, std::move(pts), label);
}

}  // namespace

InterpolationReport construct_interpolated_set(const IndexSet& S, double alpha, const FolnerSequence& F,
                                               std::size_t n_max, const EstimatorOptions& opt) {
    if (!(alpha > 0 && alpha <= 1)) throw Error(ErrorKind::Config, "alpha must lie in (0, 1]");
    n_max = std::min(n_max, F.count() - 1);
    std::vector<Point> pts = S.restrict(F.shape(n_max)).points();
    Shape prev = Shape::empty(F.dim());
    for (std::size_t n = 0; n <= n_max; ++n) {
        Shape Fn = F.shape(n);
        Shape ann = shape_difference(Fn, prev);
        const std::size_t want = floor_pow(Fn.size(), alpha) - (n == 0 ? 0 : floor_pow(prev.size(), alpha));
        if (ann.size() < want)
            throw Error(ErrorKind::InfeasibleAnnulus, "annulus at n=" + std::to_string(n) + " holds " +
                                                          std::to_string(ann.size()) + " < " + std::to_string(want));
        pts.insert(pts.end(), ann.points().begin(), ann.points().begin() + static_cast<long>(want));
        prev = std::move(Fn);
    }
    InterpolationReport r;
    r.set = as_index_set(F.dim(), std::move(pts), "interpolated");
    SubsetDimensionReport d = subset_dimension(r.set, F, n_max, opt);
    for (const auto& row : d.counts.rows) r.rows.push_back({row.n, row.count, floor_pow(row.size, alpha)});
    r.estimate = d.estimate;
    std::vector<double> pw;
    for (const auto& row : d.counts.rows)
        if (static_cast<double>(row.size) >= opt.fit_min_size && row.count > 0)
            pw.push_back(std::log(static_cast<double>(row.count)) / std::log(static_cast<double>(row.size)));
    if (!pw.empty()) r.measured_lower = *std::min_element(pw.begin() + static_cast<long>(pw.size() / 2), pw.end());
    r.meets_alpha = r.measured_lower >= alpha - 0.05;
    return r;
}

PosUpperReport construct_pos_upper_set(const IndexSet& S, const GenSetReport& report, const FolnerSequence& F,
                                       std::size_t n_max, std::size_t min_scales) {
    if (!report.in_P) throw Error(ErrorKind::Config, "S fails the positive-upper test in the supplied report");
    n_max = std::min(n_max, F.count() - 1);
    IndexCounts ic = index_counts(S, F, n_max);
    auto cnt = [&](std::size_t n) { return ic.rows[n].count; };
    auto sz = [&](std::size_t n) { return ic.rows[n].size; };

    PosUpperReport r;
    if (n_max < 1) throw Error(ErrorKind::ScaleSelection, "range too short");
    r.scales.push_back(1);
    for (;;) {
        const std::size_t prev = r.scales.back();
        std::size_t pick = 0;
        for (std::size_t n = prev + 1; n <= n_max && !pick; ++n) {
            bool ok = sz(n) >= 2 * cnt(prev);
            if (r.scales.size() >= 2) ok = ok && cnt(n) >= sz(prev);
            if (ok) pick = n;
        }
        if (!pick) break;
        r.scales.push_back(pick);
    }
    if (r.scales.size() < min_scales)
        throw Error(ErrorKind::ScaleSelection, "only " + std::to_string(r.scales.size()) + " scales within n_max=" +
                                                   std::to_string(n_max) + ", need " + std::to_string(min_scales));

    // A: F_{n_1} u S u U_i F_{n_{i+1}} \ (F_{n_i} n S);  B: F_{n_1} u S u U_i (F_{n_{i+1}} \ F_{n_i}) n S.
    const Shape top = F.shape(r.scales.back());
    const Shape Sx = S.restrict(top);
    Shape A = shape_union(F.shape(r.scales[0]), Sx), B = A;
    for (std::size_t i = 0; i + 1 < r.scales.size(); ++i) {
        const Shape lo = F.shape(r.scales[i]), hi = F.shape(r.scales[i + 1]);
        A = shape_union(A, shape_difference(hi, shape_intersection(lo, Sx)));
        B = shape_union(B, shape_intersection(shape_difference(hi, lo), Sx));
    }
    r.reading_A = as_index_set(F.dim(), A.points(), "reading-A");
    r.reading_B = as_index_set(F.dim(), B.points(), "reading-B");
    for (auto n : r.scales) {
        const Shape Fn = F.shape(n);
        const double s = static_cast<double>(Fn.size());
        r.rows.push_back({n, static_cast<double>(shape_intersection(A, Fn).size()) / s,
                          static_cast<double>(shape_intersection(B, Fn).size()) / s});
    }
    for (std::size_t i = r.rows.size() / 2; i < r.rows.size(); ++i) {
        r.upper_A = std::max(r.upper_A, r.rows[i].density_A);
        r.upper_B = std::max(r.upper_B, r.rows[i].density_B);
    }
    auto near_half = [](double d) { return std::abs(d - 0.5) <= 0.1; };
    const bool a = near_half(r.upper_A), b = near_half(r.upper_B);
    r.matches = a && b ? "both" : a ? "A" : b ? "B" : "neither";
    return r;
}

ThmReport construct_thm_genset(const Factor& f, const ClopenCover& U, const FolnerSequence& F, std::size_t n_max,
                               const ThmParams& params, const Budget& budget, const EstimatorOptions& opt) {
    const IndependencePair pair = pair_from_standard(f.X, U);
    n_max = std::min(n_max, F.count() - 1);
    ThmReport t;
    t.set = IndexSet::empty_set(F.dim());
    DimensionReport d = cover_dimension(f, U, F, n_max, budget, opt);
    t.dbar = d.estimate.upper;
    if (t.dbar <= 0.05) {
        t.reason = "relative dimension estimate is ~0";
        return t;
    }

    std::vector<double> alphas = params.alphas, etas = params.etas;
    if (alphas.empty())
        for (std::size_t j = 1; j <= 64; ++j)
            alphas.push_back(std::max(t.dbar - 1.0 / static_cast<double>(j + 2), t.dbar / 4));
    if (etas.empty()) {
        double a0 = std::max(t.dbar - 0.5, t.dbar / 8);
        for (std::size_t j = 0; j < alphas.size(); ++j) {
            etas.push_back((a0 + alphas[j]) / 2);
            a0 = alphas[j];
        }
    }
    if (etas.size() < alphas.size()) throw Error(ErrorKind::Config, "eta grid shorter than alpha grid");
    if (params.a) {
        t.a = *params.a;
    } else {
        for (const auto& row : d.curve.rows)
            if (row.size >= opt.fit_min_size)
                t.a = std::max(t.a, 0.5 * row.lower.ln() / std::pow(static_cast<double>(row.size), alphas[0]));
    }

    std::vector<Point> pts;
    std::size_t nj = params.start;
    for (std::size_t j = 1; j <= alphas.size() && nj < n_max; ++j) {
        const double al = alphas[j - 1], et = etas[j - 1];
        const Shape Fj = F.shape(nj);
        ThmAnnulus an;
        bool found = false;
        for (std::size_t n = nj + 1; n <= n_max && !found; ++n) {
            Shape A = shape_difference(F.shape(n), Fj);
            const double s = static_cast<double>(A.size());
            if (std::pow(s, et) < static_cast<double>(j * Fj.size())) continue;
            ComplexityResult c = complexity_relative(f, U, A, budget);
            const double thr = t.a / 2 * std::pow(s, al);
            if (c.lower.ln() < thr) continue;
            found = true;
            an = {j, nj, n, al, et, A.size(), c.lower, thr, {}, false, Count::of(1), false};
            try {
                ShatterResult w = max_shattered(f, pair, A, budget, params.max_w);
                an.W = w.W;
                an.greedy = w.greedy;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::Capacity) throw;
                t.reason = std::string("shattering stopped at annulus ") + std::to_string(j) + ": " + e.what();
                found = false;
                n = n_max;
            }
        }
        if (!found) break;
        if (!an.W.empty()) an.N_W = complexity_relative(f, U, an.W, budget).lower;
        an.certified = !(an.N_W < Count::pow2(an.W.size()));
        pts.insert(pts.end(), an.W.points().begin(), an.W.points().end());
        t.annuli.push_back(std::move(an));
        nj = t.annuli.back().n_to;
    }
    if (t.annuli.empty()) {
        if (t.reason.empty()) t.reason = "no qualifying annuli";
        return t;
    }
    t.constructed = true;
    t.set = as_index_set(F.dim(), std::move(pts), "thm-genset");
    t.check = genset_test(t.set, f, U, F, n_max, 1e-3, budget);
    t.acceptance = t.check.liminf >= 0.25 * std::log(2.0) &&
                   std::all_of(t.annuli.begin(), t.annuli.end(), [](const auto& a) { return a.certified; });
    return t;
}

SubsequenceReport folner_minimizing_subsequence(const std::vector<GrowthPoint>& pts, double alpha,
                                                const EstimatorOptions& opt) {
    SubsequenceReport r;
    r.full = critical_exponent(pts, opt);
    std::vector<std::size_t> win;
    std::vector<double> ratio;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (pts[i].size >= opt.fit_min_size && pts[i].lo > 0) {
            win.push_back(i);
            ratio.push_back(pts[i].lo / std::pow(pts[i].size, alpha));
        }
    std::vector<std::size_t> pick;
    for (std::size_t k = 0; k < win.size(); ++k)
        if (pick.empty() || ratio[k] < ratio[pick.back()]) pick.push_back(k);
    if (pick.size() < 4) {
        r.fallback = true;
        pick.clear();
        double m = INFINITY;
        for (std::size_t k = win.size(); k-- > 0;)
            if (ratio[k] <= m) {
                m = ratio[k];
                pick.push_back(k);
            }
        std::reverse(pick.begin(), pick.end());
    }
    std::vector<GrowthPoint> sub;
    for (auto k : pick) {
        r.selected.push_back(pts[win[k]].n);
        sub.push_back(pts[win[k]]);
    }
    r.sub = critical_exponent(sub, opt);
    r.within_alpha = r.sub.upper <= alpha + 1e-9;
    return r;
}

}  // namespace endim
