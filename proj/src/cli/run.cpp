#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "context.hpp"
#include "endim/joinings.hpp"

namespace endim::cli {

const std::vector<std::string>& task_names() {
    static const std::vector<std::string> names{"complexity", "dimension", "subset-dim",  "genset", "construct",
                                                "independence", "tuple-dim", "joining", "folner"};
    return names;
}

Json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    double r = std::strtod(buf, nullptr);
    if (r == 0) r = 0;  // drop the sign of -0
    return r;
}

std::string config_hash(const Json& config) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : config.dump()) h = (h ^ c) * 1099511628211ull;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

Json count_json(const Count& c) { return c.overflow ? Json(c.str()) : Json(c.value); }

Json estimate_json(const ExponentEstimate& e) {
    Json j{{"value", num(e.value)},           {"upper", num(e.upper)},
           {"lower", num(e.lower)},           {"scan_upper", num(e.scan_upper)},
           {"scan_lower", num(e.scan_lower)}, {"fit_rows", e.fit_rows},
           {"degenerate", e.degenerate}};
    if (!e.note.empty()) j["note"] = e.note;
    if (e.value_hi) {
        j["value_hi"] = num(*e.value_hi);
        j["upper_hi"] = num(*e.upper_hi);
        j["lower_hi"] = num(*e.lower_hi);
    }
    return j;
}

std::string rational_str(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

struct Job {
    const Context& ctx;
    Node params;
    RunReport& rep;

    std::size_t n_max(std::size_t dflt) const {
        std::size_t n = params.count("n_max", dflt);
        if (n < 1) throw ConfigError(params.at_ptr("n_max"), "n_max must be at least 1");
        return n;
    }
    LanguageSource system(const char* key = "system") const { return ctx.system(params.at(key)); }

    void note_modes(std::size_t bounds, std::size_t local, const std::string& what) {
        if (bounds) {
            rep.warnings.push_back(what + ": " + std::to_string(bounds) + " row(s) in bounds mode");
            rep.degraded = true;
        }
        if (local) rep.warnings.push_back(what + ": " + std::to_string(local) + " row(s) in local_upper mode");
    }
    void note_curve(const ComplexityCurve& c, const std::string& what) {
        std::size_t b = 0, l = 0;
        for (const auto& r : c.rows) {
            b += r.mode == Mode::Bounds;
            l += r.mode == Mode::LocalUpper;
        }
        note_modes(b, l, what);
    }
    void note_estimate(const ExponentEstimate& e, const std::string& what) {
        if (e.degenerate) rep.warnings.push_back(what + ": degenerate estimate" + (e.note.empty() ? "" : " (" + e.note + ")"));
    }
};

void curve_table(RunReport& rep, const ComplexityCurve& c, const ExponentEstimate& e) {
    rep.table.columns = {"n", "folner_size", "N", "mode", "lograt", "alpha_upper", "alpha_lower", "N_upper"};
    for (const auto& r : c.rows) {
        Json lograt = nullptr;
        double lnN = r.lower.ln();
        if (lnN > 0 && r.size > 1) lograt = num(std::log(lnN) / std::log(static_cast<double>(r.size)));
        rep.table.rows.push_back({r.n, r.size, count_json(r.lower), mode_name(r.mode), lograt, num(e.upper),
                                  num(e.lower), count_json(r.upper)});
    }
}

void task_curve(Job& j, bool dimension) {
    auto X = j.system();
    auto U = j.ctx.cover(j.params.at("cover"), X);
    auto f = j.ctx.factor(j.params, X);
    std::size_t n = j.n_max(32);
    auto F = j.ctx.folner(j.params, X.dim(), n);
    j.rep.summary["system"] = X.describe();
    j.rep.summary["cover_size"] = U.size();
    j.rep.summary["cover_kind"] = cover_kind_name(cover_validate(X, U).kind);
    j.rep.summary["n_max"] = n;
    auto rep = cover_dimension(f, U, F, n, j.ctx.budget);
    curve_table(j.rep, rep.curve, rep.estimate);
    j.note_curve(rep.curve, "complexity");
    j.rep.summary["estimate"] = estimate_json(rep.estimate);
    j.note_estimate(rep.estimate, "estimate");
    if (dimension && j.params.flag("absolute", false)) {
        auto abs = cover_dimension(Factor::trivial(X), U, F, n, j.ctx.budget);
        j.note_curve(abs.curve, "absolute complexity");
        j.rep.summary["absolute_estimate"] = estimate_json(abs.estimate);
    }
}

void task_family(Job& j) {
    auto X = j.system();
    auto f = j.ctx.factor(j.params, X);
    std::size_t n = j.n_max(10);
    auto F = j.ctx.folner(j.params, X.dim(), n);
    int radius = static_cast<int>(j.params.at("family").integer("radius", 1));
    auto fam = standard_cover_family(X, radius);
    if (fam.empty()) j.params.at("family").fail("system has no standard covers at this radius");
    auto s = system_dimension(f, fam, F, n, j.ctx.budget);
    j.rep.table.columns = {"cover", "alpha", "alpha_upper", "alpha_lower", "exact"};
    for (std::size_t i = 0; i < s.family.size(); ++i) {
        const auto& e = s.reports[i].estimate;
        j.note_curve(s.reports[i].curve, s.family[i].label);
        j.rep.table.rows.push_back({s.family[i].label, num(e.value), num(e.upper), num(e.lower),
                                    s.reports[i].curve.exact()});
    }
    j.rep.summary["system"] = X.describe();
    j.rep.summary["family_size"] = s.family.size();
    j.rep.summary["upper"] = num(s.upper);
    j.rep.summary["lower"] = num(s.lower);
    j.rep.summary["witness"] = s.family[s.witness].label;
}

void task_subset(Job& j) {
    auto S = j.ctx.set(j.params.at("set"));
    std::size_t n = j.n_max(256);
    auto F = j.ctx.folner(j.params, S.dim(), n);
    auto r = subset_dimension(S, F, n);
    j.rep.table.columns = {"n", "folner_size", "count", "density", "density_exact"};
    for (const auto& row : r.counts.rows)
        j.rep.table.rows.push_back({row.n, row.size, row.count,
                                    num(boost::rational_cast<double>(row.density)), rational_str(row.density)});
    j.rep.summary["set"] = S.label();
    j.rep.summary["bounded"] = !r.counts.unbounded;
    j.rep.summary["estimate"] = estimate_json(r.estimate);
    j.note_estimate(r.estimate, "estimate");
}

GenSetReport run_genset(Job& j, const LanguageSource& X, const IndexSet& S, std::size_t n) {
    auto U = j.ctx.cover(j.params.at("cover"), X);
    auto f = j.ctx.factor(j.params, X);
    auto F = j.ctx.folner(j.params, X.dim(), n);
    auto g = genset_test(S, f, U, F, n, j.params.real("tau", 1e-3), j.ctx.budget);
    std::size_t b = 0, l = 0;
    for (const auto& r : g.rows) b += r.mode == Mode::Bounds, l += r.mode == Mode::LocalUpper;
    j.note_modes(b, l, "generating-set test");
    return g;
}

Json genset_summary(const GenSetReport& g) {
    return {{"liminf", num(g.liminf)}, {"limsup", num(g.limsup)}, {"tau", num(g.tau)},
            {"in_E", g.in_E},          {"in_P", g.in_P},          {"tail_from", g.tail_from}};
}

void task_genset(Job& j) {
    auto X = j.system();
    auto S = j.ctx.set(j.params.at("set"));
    std::size_t n = j.n_max(32);
    auto g = run_genset(j, X, S, n);
    j.rep.table.columns = {"n", "count", "N", "N_upper", "mode", "ratio"};
    for (const auto& r : g.rows)
        j.rep.table.rows.push_back({r.n, r.count, count_json(r.lower), count_json(r.upper), mode_name(r.mode),
                                    r.ratio ? num(*r.ratio) : Json(nullptr)});
    j.rep.summary = genset_summary(g);
    j.rep.summary["set"] = S.label();
    j.rep.summary["system"] = X.describe();
}

Json members(const IndexSet& S, std::int64_t hi, std::size_t limit) {
    Json out = Json::array();
    for (auto m : S.members_in(0, hi)) {
        if (out.size() >= limit) break;
        out.push_back(m);
    }
    return out;
}

void task_construct(Job& j) {
    const std::string kind = j.params.str("kind");
    const std::size_t limit = j.params.count("list_members", 64);
    if (kind == "interpolated") {
        auto S = j.ctx.set(j.params.at("set"));
        std::size_t n = j.n_max(256);
        auto F = j.ctx.folner(j.params, 1, n);
        auto r = construct_interpolated_set(S, j.params.real("alpha"), F, n);
        j.rep.table.columns = {"n", "count", "target"};
        for (const auto& row : r.rows) j.rep.table.rows.push_back({row.n, row.count, row.target});
        j.rep.summary["estimate"] = estimate_json(r.estimate);
        j.rep.summary["measured_lower"] = num(r.measured_lower);
        j.rep.summary["meets_alpha"] = r.meets_alpha;
        j.rep.summary["members"] = members(r.set, static_cast<std::int64_t>(F.shape_size(n)), limit);
        if (!r.meets_alpha) j.rep.warnings.push_back("measured lower exponent below alpha - 0.05");
        return;
    }
    if (kind == "pos-upper") {
        auto X = j.system();
        auto S = j.ctx.set(j.params.at("set"));
        std::size_t n = j.n_max(1024);
        auto g = run_genset(j, X, S, j.params.count("test_n_max", 32));
        auto F = FolnerSequence::boxes(1, n + 1);
        auto r = construct_pos_upper_set(S, g, F, n, j.params.count("min_scales", 5));
        j.rep.table.columns = {"n", "density_A", "density_B"};
        for (const auto& row : r.rows) j.rep.table.rows.push_back({row.n, num(row.density_A), num(row.density_B)});
        j.rep.summary["genset"] = genset_summary(g);
        j.rep.summary["scales"] = r.scales;
        j.rep.summary["upper_A"] = num(r.upper_A);
        j.rep.summary["upper_B"] = num(r.upper_B);
        j.rep.summary["matches"] = r.matches;
        j.rep.summary["members_A"] = members(r.reading_A, static_cast<std::int64_t>(F.shape_size(n)), limit);
        j.rep.summary["members_B"] = members(r.reading_B, static_cast<std::int64_t>(F.shape_size(n)), limit);
        return;
    }
    if (kind == "thm") {
        auto X = j.system();
        auto U = j.ctx.cover(j.params.at("cover"), X);
        auto f = j.ctx.factor(j.params, X);
        std::size_t n = j.n_max(100);
        auto F = j.ctx.folner(j.params, X.dim(), n);
        ThmParams tp;
        if (j.params.has("a")) tp.a = j.params.real("a");
        auto reals = [&](const char* key) {
            std::vector<double> out;
            if (!j.params.has(key)) return out;
            Node a = j.params.at(key);
            if (!a.json().is_array()) a.fail("expected an array of numbers");
            for (std::size_t i = 0; i < a.json().size(); ++i) {
                if (!a.json()[i].is_number()) throw ConfigError(a.at_ptr(std::to_string(i)), "expected a number");
                out.push_back(a.json()[i].get<double>());
            }
            return out;
        };
        tp.alphas = reals("alphas");
        tp.etas = reals("etas");
        tp.max_w = j.params.count("max_w", 20);
        tp.start = j.params.count("start", 1);
        auto t = construct_thm_genset(f, U, F, n, tp, j.ctx.budget);
        j.rep.table.columns = {"j", "n_from", "n_to", "alpha", "eta", "size", "N_lower", "threshold",
                               "W", "greedy", "N_W", "certified"};
        for (const auto& a : t.annuli) {
            j.rep.table.rows.push_back({a.j, a.n_from, a.n_to, num(a.alpha), num(a.eta), a.size,
                                        count_json(a.N_lower), num(a.threshold), format_shape(a.W), a.greedy,
                                        count_json(a.N_W), a.certified});
            if (a.greedy) j.rep.warnings.push_back("annulus " + std::to_string(a.j) + ": W found greedily");
        }
        j.rep.summary["constructed"] = t.constructed;
        if (!t.reason.empty()) j.rep.summary["reason"] = t.reason;
        j.rep.summary["dbar"] = num(t.dbar);
        j.rep.summary["a"] = num(t.a);
        j.rep.summary["acceptance"] = t.acceptance;
        if (t.constructed) {
            j.rep.summary["check"] = genset_summary(t.check);
            j.rep.summary["members"] = members(t.set, static_cast<std::int64_t>(F.shape_size(n)), limit);
        }
        return;
    }
    j.params.at("kind").fail("expected interpolated, pos-upper or thm");
}

IndependencePair pair_of(Job& j, const LanguageSource& X) {
    if (j.params.has("cover")) {
        auto U = j.ctx.cover(j.params.at("cover"), X);
        try {
            return pair_from_standard(X, U);
        } catch (const Error& e) {
            j.params.at("cover").fail(e.what());
        }
    }
    std::vector<Word> A1, A2;
    for (auto& s : j.params.strings("A1")) A1.push_back(j.ctx.word(Node(Json(s), j.params.at_ptr("A1"))));
    for (auto& s : j.params.strings("A2")) A2.push_back(j.ctx.word(Node(Json(s), j.params.at_ptr("A2"))));
    auto base = j.ctx.shape(j.params.at("base"), X.dim());
    try {
        return make_pair(X, base, A1, A2);
    } catch (const Error& e) {
        j.params.fail(e.what());
    }
}

void task_independence(Job& j) {
    auto X = j.system();
    auto f = j.ctx.factor(j.params, X);
    auto P = pair_of(j, X);
    ShatterResult r;
    std::optional<std::size_t> sauer;
    if (j.params.has("W")) {
        r = independent_along(f, P, j.ctx.shape(j.params.at("W"), X.dim()), j.ctx.budget);
    } else {
        auto B = j.ctx.shape(j.params.at("B"), X.dim());
        std::size_t max_w = j.params.count("max_w", 20);
        r = max_shattered(f, P, B, j.ctx.budget, max_w);
        if (!r.greedy) sauer = sauer_bound(independent_along(f, P, B, j.ctx.budget).achieved, B.size());
        j.rep.summary["B"] = format_shape(B);
    }
    j.rep.table.columns = {"k", "point"};
    for (std::size_t k = 0; k < r.W.size(); ++k) j.rep.table.rows.push_back({k, format_point(r.W[k], r.W.dim())});
    j.rep.summary["W"] = format_shape(r.W);
    j.rep.summary["size"] = r.W.size();
    j.rep.summary["achieved"] = r.achieved;
    j.rep.summary["shattered"] = r.shattered;
    j.rep.summary["greedy"] = r.greedy;
    j.rep.summary["mode"] = mode_name(r.mode);
    if (r.witness_y && !r.witness_y->empty()) j.rep.summary["witness_y"] = word_string(*r.witness_y);
    if (sauer) j.rep.summary["sauer_bound"] = *sauer;
    if (r.greedy) j.rep.warnings.push_back("W found greedily; not certified maximal");
    j.note_modes(r.mode == Mode::Bounds, r.mode == Mode::LocalUpper, "fibers");
}

void task_tuples(Job& j) {
    auto X = j.system();
    auto f = j.ctx.factor(j.params, X);
    std::size_t n = j.n_max(9);
    auto F = j.ctx.folner(j.params, X.dim(), n);
    std::vector<std::size_t> ks = j.params.has("ks") ? j.params.counts("ks") : std::vector<std::size_t>{1};
    for (auto k : ks)
        if (k == 0) throw ConfigError(j.params.at_ptr("ks"), "k must be positive");
    std::vector<TupleSpec> tuples;
    if (j.params.has("sample")) {
        Node s = j.params.at("sample");
        std::uint64_t seed = s.count("seed", 1);
        tuples = sample_tuples(X, s.count("count", 8), s.count("arity", 2), s.count("max_period", 3),
                               static_cast<int>(s.integer("radius", ball_radius(*std::max_element(ks.begin(), ks.end())))),
                               seed);
        j.rep.summary["seed"] = seed;
    } else {
        Node t = j.params.at("tuples");
        if (!t.json().is_array() || t.json().empty()) t.fail("expected a non-empty array of tuples");
        for (std::size_t i = 0; i < t.json().size(); ++i) {
            Node e(t.json()[i], t.at_ptr(std::to_string(i)));
            if (!e.json().is_array() || e.json().empty()) e.fail("expected an array of points");
            TupleSpec ts;
            for (std::size_t q = 0; q < e.json().size(); ++q)
                ts.points.push_back(j.ctx.point(Node(e.json()[q], e.at_ptr(std::to_string(q)))));
            tuples.push_back(ts);
        }
    }
    if (tuples.size() == 1 && !j.params.has("sample")) {
        auto r = tuple_dimension(f, tuples[0], ks, F, n, j.ctx.budget);
        j.rep.table.columns = {"k", "radius", "alpha", "alpha_upper", "alpha_lower", "exact"};
        for (const auto& row : r.rows) {
            const auto& e = row.report.estimate;
            j.note_curve(row.report.curve, "k=" + std::to_string(row.k));
            j.rep.table.rows.push_back(
                {row.k, row.radius, num(e.value), num(e.upper), num(e.lower), row.report.curve.exact()});
        }
        j.rep.summary["tuple"] = tuples[0].describe();
        j.rep.summary["tail"] = num(r.tail);
        j.rep.summary["monotone"] = r.monotone;
        if (!r.monotone) j.rep.warnings.push_back("upper estimates not monotone in k");
        return;
    }
    auto s = dimension_set_sample(f, tuples, ks, F, n, j.params.real("threshold", 0.5), j.ctx.budget);
    j.rep.table.columns = {"tuple", "points", "alpha_upper", "note"};
    for (std::size_t i = 0; i < s.tuples.size(); ++i)
        j.rep.table.rows.push_back({i, s.tuples[i].describe(), s.values[i] ? num(*s.values[i]) : Json(nullptr),
                                    s.notes[i]});
    j.rep.summary["histogram"] = s.histogram;
    j.rep.summary["threshold"] = num(s.threshold);
    j.rep.summary["all_above"] = s.all_above;
}

Word parse_pair_word(const Node& n, int ax, int ay) {
    if (!n.json().is_string()) n.fail("expected a pair word like (1,0)(0,0)");
    const std::string s = n.json().get<std::string>();
    Word w;
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned x = 0, y = 0;
        int used = 0;
        if (std::sscanf(s.c_str() + i, "(%u,%u)%n", &x, &y, &used) != 2 || used == 0)
            n.fail("cannot parse pair word at offset " + std::to_string(i));
        if (x >= static_cast<unsigned>(ax) || y >= static_cast<unsigned>(ay)) n.fail("symbol out of range");
        w.push_back(static_cast<std::uint8_t>(x * ay + y));
        i += static_cast<std::size_t>(used);
    }
    if (w.empty()) n.fail("empty pair word");
    return w;
}

Json joining_json(const JoiningReport& r, int ay) {
    Json j{{"nonempty", r.nonempty}, {"is_joining", r.is_joining}, {"is_proper", r.is_proper}, {"window", r.window}};
    if (r.missing_X) j["missing_X"] = word_string(*r.missing_X);
    if (r.missing_Y) j["missing_Y"] = word_string(*r.missing_Y);
    if (r.proper_witness) j["distinguishing_word"] = pair_word(*r.proper_witness, ay);
    return j;
}

void task_joining(Job& j) {
    const std::string mode = j.params.str("mode", "search");
    if (mode == "probe") {
        auto X = j.system();
        auto f = j.ctx.factor(j.params, X);
        const std::string kind = j.params.str("kind", "minimal");
        if (kind != "minimal" && kind != "open") j.params.at("kind").fail("expected minimal or open");
        auto r = factor_probe(f, kind == "open" ? ProbeKind::Open : ProbeKind::Minimal, j.params.count("window", 2),
                              j.ctx.budget);
        j.rep.table.columns = {"kind", "window", "violation", "verdict", "witness", "checked"};
        j.rep.table.rows.push_back({kind, r.window, r.violation, r.verdict, r.witness, r.checked});
        j.rep.summary["verdict"] = r.verdict;
        return;
    }
    auto X = j.system("X");
    auto Y = j.system("Y");
    auto Z = j.params.has("Z") ? j.system("Z") : LanguageSource::full_shift(1);
    auto pX = j.params.has("pi_X") ? j.ctx.code(j.params.at("pi_X")) : BlockCode::constant(X.alphabet(), 0);
    auto pY = j.params.has("pi_Y") ? j.ctx.code(j.params.at("pi_Y")) : BlockCode::constant(Y.alphabet(), 0);
    FiberProduct fp;
    try {
        fp = fiber_product(X, Y, Z, pX, pY);
    } catch (const Error& e) {
        j.params.fail(e.what());
    }
    j.rep.summary["fiber_product_window"] = fp.window;
    j.rep.table.columns = {"forbidden"};
    if (mode == "check") {
        Node fl = j.params.at("forbidden");
        if (!fl.json().is_array()) fl.fail("expected an array of pair words");
        JoiningCandidate c;
        for (std::size_t i = 0; i < fl.json().size(); ++i) {
            Word w = parse_pair_word(Node(fl.json()[i], fl.at_ptr(std::to_string(i))), fp.ax, fp.ay);
            if (i == 0) c.window = w.size();
            if (w.size() != c.window) throw ConfigError(fl.at_ptr(std::to_string(i)), "all words need one length");
            c.forbidden.push_back(w);
        }
        auto r = joining_check(fp, c);
        for (const auto& w : c.forbidden) j.rep.table.rows.push_back({pair_word(w, fp.ay)});
        j.rep.summary["check"] = joining_json(r, fp.ay);
        return;
    }
    if (mode != "search") j.params.at("mode").fail("expected search, check or probe");
    auto r = proper_joining_search(fp, j.params.count("w_max", 2), j.ctx.budget);
    j.rep.summary["found"] = r.found;
    j.rep.summary["window"] = r.window;
    j.rep.summary["checked"] = r.checked;
    j.rep.summary["exhausted"] = r.exhausted;
    if (r.found) {
        for (const auto& w : r.witness.forbidden) j.rep.table.rows.push_back({pair_word(w, fp.ay)});
        j.rep.summary["witness"] = joining_json(r.report, fp.ay);
        j.rep.summary["certificate"] = "proper joining";
    } else if (r.exhausted) {
        j.rep.summary["certificate"] = "exhausted: no proper joining up to window " + std::to_string(r.window);
    } else {
        j.rep.summary["frontier"] = r.frontier;
        j.rep.warnings.push_back("node budget exhausted at " + r.frontier);
        j.rep.degraded = true;
    }
}

void task_folner(Job& j) {
    const std::string mode = j.params.str("mode", "defect");
    if (mode == "defect") {
        int dim = static_cast<int>(j.params.integer("dim", 1));
        if (dim != 1 && dim != 2) throw ConfigError(j.params.at_ptr("dim"), "dimension must be 1 or 2");
        auto K = j.ctx.shape(j.params.at("K"), dim);
        std::size_t n = j.n_max(16);
        auto F = j.ctx.folner(j.params, dim, n);
        j.rep.table.columns = {"n", "folner_size", "defect", "defect_value"};
        for (std::size_t i = 0; i <= n; ++i) {
            auto d = invariance_defect(K, F.shape(i));
            j.rep.table.rows.push_back({i, F.shape_size(i), rational_str(d), num(boost::rational_cast<double>(d))});
        }
        j.rep.summary["K"] = format_shape(K);
        return;
    }
    if (mode != "minimizing") j.params.at("mode").fail("expected defect or minimizing");
    auto X = j.system();
    auto U = j.ctx.cover(j.params.at("cover"), X);
    auto f = j.ctx.factor(j.params, X);
    std::size_t n = j.n_max(1023);
    auto F = j.ctx.folner(j.params, X.dim(), n);
    double alpha = j.params.real("alpha");
    auto c = complexity_curve(f, U, F, n, j.ctx.budget);
    j.note_curve(c, "complexity");
    auto s = folner_minimizing_subsequence(growth_of(c), alpha);
    j.rep.table.columns = {"n", "folner_size", "N", "mode"};
    for (auto i : s.selected) {
        const auto& r = c.rows[i];
        j.rep.table.rows.push_back({r.n, r.size, count_json(r.lower), mode_name(r.mode)});
    }
    j.rep.summary["alpha"] = num(alpha);
    j.rep.summary["full"] = estimate_json(s.full);
    j.rep.summary["sub"] = estimate_json(s.sub);
    j.rep.summary["difference"] = num(s.full.upper - s.sub.upper);
    j.rep.summary["within_alpha"] = s.within_alpha;
    j.rep.summary["fallback"] = s.fallback;
    j.rep.summary["selected"] = s.selected.size();
    if (s.fallback) j.rep.warnings.push_back("too few record lows; suffix minima used");
}

}  // namespace

RunReport run(const Json& config_in, const RunOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    Json config = config_in;
    if (opt.budget) config["budget"]["nodes"] = *opt.budget;
    Context ctx(config);
    Node root(config, "");
    RunReport rep;
    rep.task = root.str("task");
    if (std::find(task_names().begin(), task_names().end(), rep.task) == task_names().end())
        throw ConfigError("/task", "unknown task '" + rep.task + "'");
    rep.preset = root.str("preset", "");
    rep.config_hash = config_hash(config);
    static const Json empty = Json::object();
    Node params = root.has("params") ? root.at("params") : Node(empty, "/params");
    if (!params.json().is_object()) params.fail("expected an object");
    Job job{ctx, params, rep};
    static const std::map<std::string, std::function<void(Job&)>> tasks{
        {"complexity", [](Job& j) { task_curve(j, false); }},
        {"dimension", [](Job& j) { j.params.has("family") ? task_family(j) : task_curve(j, true); }},
        {"subset-dim", task_subset},
        {"genset", task_genset},
        {"construct", task_construct},
        {"independence", task_independence},
        {"tuple-dim", task_tuples},
        {"joining", task_joining},
        {"folner", task_folner},
    };
    tasks.at(rep.task)(job);
    if (opt.timing)
        rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace endim::cli
