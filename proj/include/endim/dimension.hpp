#pragma once

#include <optional>
#include <string>

#include "endim/cover.hpp"
#include "endim/independence.hpp"

namespace endim {

// One sample of a growing quantity v_n (ln N or a member count) along F_n.
// lo == hi unless the row only carries bounds.
struct GrowthPoint {
    std::size_t n = 0;
    double size = 0;
    double lo = 0, hi = 0;
};

struct EstimatorOptions {
    double fit_min_size = 4;
    double grid_step = 0.01;
};

struct ExponentEstimate {
    double value = 0;  // OLS slope of ln v on ln |F| over the fit window
    double upper = 0;  // largest doubling chord
    double lower = 0;  // smallest doubling chord
    double scan_upper = 0;
    double scan_lower = 0;
    // Same estimators on the hi curve when rows carry bounds.
    std::optional<double> value_hi, upper_hi, lower_hi;
    std::size_t fit_rows = 0;
    bool degenerate = false;
    std::string note;
};

ExponentEstimate critical_exponent(const std::vector<GrowthPoint>& pts, const EstimatorOptions& opt = {});
std::vector<GrowthPoint> growth_of(const ComplexityCurve& c);

ComplexityCurve complexity_curve(const Factor& f, const ClopenCover& U, const FolnerSequence& F, std::size_t n_max,
                                 const Budget& budget = {});

struct DimensionReport {
    ComplexityCurve curve;
    ExponentEstimate estimate;
};

DimensionReport cover_dimension(const Factor& f, const ClopenCover& U, const FolnerSequence& F, std::size_t n_max,
                                const Budget& budget = {}, const EstimatorOptions& opt = {});

struct LabeledCover {
    std::string label;
    ClopenCover cover;
};

// Standard covers {X \ [a], X \ [b]} over words a < b on [0, l), l = 1..radius.
std::vector<LabeledCover> standard_cover_family(const LanguageSource& X, int radius);

struct SystemDimensionReport {
    std::vector<LabeledCover> family;
    std::vector<DimensionReport> reports;
    std::size_t witness = 0;  // index of the cover attaining the upper value
    double upper = 0, lower = 0;
};

SystemDimensionReport system_dimension(const Factor& f, const std::vector<LabeledCover>& family,
                                       const FolnerSequence& F, std::size_t n_max, const Budget& budget = {},
                                       const EstimatorOptions& opt = {});

struct SubsetDimensionReport {
    IndexCounts counts;
    ExponentEstimate estimate;
};

SubsetDimensionReport subset_dimension(const IndexSet& S, const FolnerSequence& F, std::size_t n_max,
                                       const EstimatorOptions& opt = {});

struct GenSetRow {
    std::size_t n = 0;
    std::size_t count = 0;  // |S n F_n|
    Count lower, upper;     // N of the join over S n F_n
    Mode mode = Mode::Exact;
    std::optional<double> ratio;  // ln N / |S n F_n|
};

struct GenSetReport {
    std::vector<GenSetRow> rows;
    double liminf = 0, limsup = 0;  // tail min / max of the ratio
    double tau = 1e-3;
    bool in_E = false;  // liminf > tau
    bool in_P = false;  // limsup > tau
    std::size_t tail_from = 0;
};

GenSetReport genset_test(const IndexSet& S, const Factor& f, const ClopenCover& U, const FolnerSequence& F,
                         std::size_t n_max, double tau = 1e-3, const Budget& budget = {});

// ---- constructions ----

struct InterpolationRow {
    std::size_t n = 0;
    std::size_t count = 0;   // |F n F_n|
    std::size_t target = 0;  // floor(|F_n|^alpha)
};

struct InterpolationReport {
    IndexSet set;
    std::vector<InterpolationRow> rows;
    ExponentEstimate estimate;
    // min of ln|F n F_n| / ln|F_n| over the later half of the window
    double measured_lower = 0;
    bool meets_alpha = false;  // measured_lower >= alpha - 0.05
};

InterpolationReport construct_interpolated_set(const IndexSet& S, double alpha, const FolnerSequence& F,
                                               std::size_t n_max, const EstimatorOptions& opt = {});

struct PosUpperRow {
    std::size_t n = 0;
    double density_A = 0, density_B = 0;
};

struct PosUpperReport {
    std::vector<std::size_t> scales;
    IndexSet reading_A, reading_B;
    std::vector<PosUpperRow> rows;
    double upper_A = 0, upper_B = 0;  // max density over the later half of the scales
    std::string matches;              // which reading sits near density 1/2
};

PosUpperReport construct_pos_upper_set(const IndexSet& S, const GenSetReport& report, const FolnerSequence& F,
                                       std::size_t n_max, std::size_t min_scales = 5);

struct ThmParams {
    std::optional<double> a;
    std::vector<double> alphas, etas;  // empty: derived from the dimension estimate
    std::size_t max_w = 20;
    std::size_t start = 1;
};

struct ThmAnnulus {
    std::size_t j = 0;
    std::size_t n_from = 0, n_to = 0;
    double alpha = 0, eta = 0;
    std::size_t size = 0;
    Count N_lower;
    double threshold = 0;  // ln of the complexity the annulus had to exceed
    Shape W;
    bool greedy = false;
    Count N_W;
    bool certified = false;  // N over W >= 2^|W|
};

struct ThmReport {
    bool constructed = false;
    std::string reason;
    double dbar = 0;
    double a = 0;
    std::vector<ThmAnnulus> annuli;
    IndexSet set;
    GenSetReport check;
    bool acceptance = false;  // check.liminf >= ln(2)/4 and every annulus certified
};

ThmReport construct_thm_genset(const Factor& f, const ClopenCover& U, const FolnerSequence& F, std::size_t n_max,
                               const ThmParams& params = {}, const Budget& budget = {},
                               const EstimatorOptions& opt = {});

struct SubsequenceReport {
    std::vector<std::size_t> selected;  // indices n into the input sequence
    bool fallback = false;              // suffix minima instead of record lows
    ExponentEstimate full, sub;
    bool within_alpha = false;  // sub.upper <= alpha
};

SubsequenceReport folner_minimizing_subsequence(const std::vector<GrowthPoint>& pts, double alpha,
                                                const EstimatorOptions& opt = {});

}  // namespace endim
