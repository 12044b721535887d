#include "endim/dimension.hpp"

#include <algorithm>
#include <cmath>

#include "endim/parallel.hpp"

namespace endim {

namespace {

struct XY {
    double x, y;
};

double ols_slope(const std::vector<XY>& p) {
    double mx = 0, my = 0;
    for (const auto& q : p) mx += q.x, my += q.y;
    mx /= static_cast<double>(p.size());
    my /= static_cast<double>(p.size());
    double sxy = 0, sxx = 0;
    for (const auto& q : p) {
        sxy += (q.x - mx) * (q.y - my);
        sxx += (q.x - mx) * (q.x - mx);
    }
    return sxx > 0 ? sxy / sxx : 0;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Largest alpha on the grid with max (or min) of v/|F|^alpha over the later
// half of the window at least its value at the first window row.
double threshold_scan(const std::vector<std::pair<double, double>>& sv, double step, bool upper) {
    const std::size_t h = sv.size() / 2;
    double best = 0;
    for (double a = 0; a <= 1 + 1e-9; a += step) {
        auto r = [&](std::size_t i) { return sv[i].second / std::pow(sv[i].first, a); };
        const double r0 = r(0);
        double ext = r(h);
        for (std::size_t i = h; i < sv.size(); ++i) ext = upper ? std::max(ext, r(i)) : std::min(ext, r(i));
        if (ext >= r0 * (1 - 1e-12)) best = a;
    }
    return best;
}

struct Fit {
    double value = 0, upper = 0, lower = 0, scan_upper = 0, scan_lower = 0;
    std::size_t rows = 0;
    bool degenerate = false;
};

Fit fit(const std::vector<std::pair<double, double>>& size_v, const EstimatorOptions& opt) {
    Fit f;
    std::vector<XY> p;
    std::vector<std::pair<double, double>> sv;
    for (const auto& [s, v] : size_v)
        if (s >= opt.fit_min_size && v > 0) {
            p.push_back({std::log(s), std::log(v)});
            sv.emplace_back(s, v);
        }
    f.rows = p.size();
    if (p.size() < 2 || p.back().x - p.front().x <= 0) {
        f.degenerate = true;
        return f;
    }
    f.value = ols_slope(p);
    bool any = false;
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::size_t j = i + 1;
        while (j < p.size() && p[j].x - p[i].x < std::log(2.0)) ++j;
        if (j == p.size()) break;
        const double c = (p[j].y - p[i].y) / (p[j].x - p[i].x);
        f.upper = any ? std::max(f.upper, c) : c;
        f.lower = any ? std::min(f.lower, c) : c;
        any = true;
    }
    if (!any) f.upper = f.lower = f.value;
    f.lower = clamp01(std::min(f.lower, f.value));
    f.upper = clamp01(std::max(f.upper, f.value));
    f.value = clamp01(f.value);
    f.scan_upper = threshold_scan(sv, opt.grid_step, true);
    f.scan_lower = threshold_scan(sv, opt.grid_step, false);
    return f;
}

bool fine_symbol_partition(const CoverReport& rep) {
    if (!rep.partition) return false;
    for (const auto& e : rep.normalized.elements)
        if (e.allowed.size() != 1) return false;
    return true;
}

}  // namespace

ExponentEstimate critical_exponent(const std::vector<GrowthPoint>& pts, const EstimatorOptions& opt) {
    std::vector<std::pair<double, double>> lo, hi;
    bool bounds = false;
    for (const auto& g : pts) {
        lo.emplace_back(g.size, g.lo);
        hi.emplace_back(g.size, g.hi);
        bounds = bounds || g.hi != g.lo;
    }
    ExponentEstimate e;
    Fit f = fit(lo, opt);
    e.value = f.value;
    e.upper = f.upper;
    e.lower = f.lower;
    e.scan_upper = f.scan_upper;
    e.scan_lower = f.scan_lower;
    e.fit_rows = f.rows;
    e.degenerate = f.degenerate;
    if (f.degenerate) e.note = "no growth in the fit window";
    if (bounds) {
        Fit g = fit(hi, opt);
        e.value_hi = g.value;
        e.upper_hi = g.upper;
        e.lower_hi = g.lower;
        e.note = e.note.empty() ? "bounds only" : e.note + "; bounds only";
    }
    return e;
}

std::vector<GrowthPoint> growth_of(const ComplexityCurve& c) {
    std::vector<GrowthPoint> out;
    for (const auto& r : c.rows)
        out.push_back({r.n, static_cast<double>(r.size), r.lower.ln(), r.upper.ln()});
    return out;
}

ComplexityCurve complexity_curve(const Factor& f, const ClopenCover& U, const FolnerSequence& F, std::size_t n_max,
                                 const Budget& budget) {
    if (F.dim() != f.X.dim()) throw Error(ErrorKind::DimensionMismatch, "folner sequence vs system dimension");
    n_max = std::min(n_max, F.count() - 1);
    ComplexityCurve c;
    c.rows.resize(n_max + 1);
    CoverReport rep = cover_validate(f.X, U);
    const Shape& base = rep.normalized.base;

    // Language counts on growing intervals cover every row at once.
    if (f.code.is_trivial() && fine_symbol_partition(rep) && F.dim() == 1 && F.kind() == FolnerSequence::Kind::Boxes &&
        base.is_interval()) {
        const std::size_t extra = base.size() - 1;
        const std::size_t L = n_max + 1 + extra;
        std::vector<LanguageSize> sizes;
        if (f.X.kind() == LanguageSource::Kind::Sft) {
            SftGraph g(f.X);
            for (const auto& k : g.interval_counts(L)) sizes.push_back({k, k, Mode::Exact});
        } else if (f.X.kind() == LanguageSource::Kind::FreeBits) {
            FreeBitsCounter fb(f.X.index_set(), L, budget);
            for (std::size_t l = 1; l <= L; ++l) sizes.push_back(fb.count(l));
        }
        if (!sizes.empty()) {
            for (std::size_t n = 0; n <= n_max; ++n) {
                const auto& s = sizes[n + extra];
                if (s.upper == Count::of(0)) throw Error(ErrorKind::Degenerate, "empty language");
                c.rows[n] = {n, n + 1, s.lower, s.upper, s.mode};
            }
            return c;
        }
    }
    parallel_for(n_max + 1, [&](std::size_t n) {
        Shape Fn = F.shape(n);
        ComplexityResult r = complexity_relative(f, U, Fn, budget);
        c.rows[n] = {n, Fn.size(), r.lower, r.upper, r.mode};
    });
    return c;
}

DimensionReport cover_dimension(const Factor& f, const ClopenCover& U, const FolnerSequence& F, std::size_t n_max,
                                const Budget& budget, const EstimatorOptions& opt) {
    DimensionReport r;
    r.curve = complexity_curve(f, U, F, n_max, budget);
    r.estimate = critical_exponent(growth_of(r.curve), opt);
    return r;
}

std::vector<LabeledCover> standard_cover_family(const LanguageSource& X, int radius) {
    if (radius < 1) throw Error(ErrorKind::Config, "cover radius must be positive");
    std::vector<LabeledCover> out;
    for (int l = 1; l <= radius; ++l) {
        const Shape base = X.dim() == 1 ? Shape::interval(0, l) : Shape::box(X.dim(), 0, l);
        PatternTable L = language(X, base);
        for (std::size_t i = 0; i < L.rows.size(); ++i)
            for (std::size_t j = i + 1; j < L.rows.size(); ++j)
                out.push_back({"std[" + word_string(L.rows[i]) + "|" + word_string(L.rows[j]) + "]",
                               standard_cover(X, base, {L.rows[i]}, {L.rows[j]})});
    }
    if (out.empty()) throw Error(ErrorKind::Degenerate, "no standard covers: fewer than two admissible words");
    return out;
}

SystemDimensionReport system_dimension(const Factor& f, const std::vector<LabeledCover>& family,
                                       const FolnerSequence& F, std::size_t n_max, const Budget& budget,
                                       const EstimatorOptions& opt) {
    if (family.empty()) throw Error(ErrorKind::Config, "empty cover family");
    SystemDimensionReport s;
    s.family = family;
    for (const auto& c : family) s.reports.push_back(cover_dimension(f, c.cover, F, n_max, budget, opt));
    for (std::size_t i = 0; i < s.reports.size(); ++i) {
        const auto& e = s.reports[i].estimate;
        if (i == 0 || e.upper > s.upper) {
            s.upper = e.upper;
            s.witness = i;
        }
        s.lower = i == 0 ? e.lower : std::max(s.lower, e.lower);
    }
    return s;
}

SubsetDimensionReport subset_dimension(const IndexSet& S, const FolnerSequence& F, std::size_t n_max,
                                       const EstimatorOptions& opt) {
    SubsetDimensionReport r;
    r.counts = index_counts(S, F, n_max);
    std::vector<GrowthPoint> g;
    for (const auto& row : r.counts.rows)
        g.push_back({row.n, static_cast<double>(row.size), static_cast<double>(row.count),
                     static_cast<double>(row.count)});
    r.estimate = critical_exponent(g, opt);
    if (!r.counts.unbounded) {
        r.estimate.degenerate = true;
        r.estimate.note = "bounded counts";
        r.estimate.value = r.estimate.upper = r.estimate.lower = 0;
        r.estimate.scan_upper = r.estimate.scan_lower = 0;
    }
    return r;
}

GenSetReport genset_test(const IndexSet& S, const Factor& f, const ClopenCover& U, const FolnerSequence& F,
                         std::size_t n_max, double tau, const Budget& budget) {
    n_max = std::min(n_max, F.count() - 1);
    GenSetReport g;
    g.tau = tau;
    g.rows.resize(n_max + 1);
    parallel_for(n_max + 1, [&](std::size_t n) {
        Shape B = S.restrict(F.shape(n));
        GenSetRow& row = g.rows[n];
        row.n = n;
        row.count = B.size();
        if (B.empty()) return;
        ComplexityResult r = complexity_relative(f, U, B, budget);
        row.lower = r.lower;
        row.upper = r.upper;
        row.mode = r.mode;
        row.ratio = r.lower.ln() / static_cast<double>(B.size());
    });
    std::vector<double> ratios;
    std::vector<std::size_t> at;
    for (const auto& r : g.rows)
        if (r.ratio) {
            ratios.push_back(*r.ratio);
            at.push_back(r.n);
        }
    if (ratios.empty()) throw Error(ErrorKind::Degenerate, "S misses every F_n");
    const std::size_t h = ratios.size() / 2;
    g.tail_from = at[h];
    g.liminf = *std::min_element(ratios.begin() + static_cast<long>(h), ratios.end());
    g.limsup = *std::max_element(ratios.begin() + static_cast<long>(h), ratios.end());
    g.in_E = g.liminf > tau;
    g.in_P = g.limsup > tau;
    return g;
}

}  // namespace endim
