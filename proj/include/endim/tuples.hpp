#pragma once

#include <optional>

#include "endim/dimension.hpp"

namespace endim {

struct TupleSpec {
    std::vector<PointSpec> points;
    std::string describe() const;
};

// ceil(log2 k); 0 for k = 1.
int ball_radius(std::size_t k);
// {X \ B_i}: B_i the central cylinder of x_i on [-R, R]^d.
ClopenCover ball_cover(const LanguageSource& X, const TupleSpec& t, int R);

struct TupleRow {
    std::size_t k = 1;
    int radius = 0;
    DimensionReport report;
};

struct TupleDimensionReport {
    std::vector<TupleRow> rows;
    double tail = 0;        // upper estimate at the largest k
    bool monotone = true;   // upper estimates non-increasing in k
};

TupleDimensionReport tuple_dimension(const Factor& f, const TupleSpec& t, const std::vector<std::size_t>& ks,
                                     const FolnerSequence& F, std::size_t n_max, const Budget& budget = {},
                                     const EstimatorOptions& opt = {});

struct DimensionSetSample {
    std::vector<TupleSpec> tuples;
    std::vector<std::optional<double>> values;  // empty when the tuple was degenerate
    std::vector<std::string> notes;
    std::vector<std::size_t> histogram;  // 10 bins over [0, 1]
    double threshold = 0;
    bool all_above = false;
};

DimensionSetSample dimension_set_sample(const Factor& f, const std::vector<TupleSpec>& tuples,
                                        const std::vector<std::size_t>& ks, const FolnerSequence& F,
                                        std::size_t n_max, double threshold = 0.5, const Budget& budget = {},
                                        const EstimatorOptions& opt = {});

// Random tuples of periodic points of X with periods up to max_period, pairwise
// distinct at radius R; reproducible for a given seed.
std::vector<TupleSpec> sample_tuples(const LanguageSource& X, std::size_t count, std::size_t arity,
                                     std::size_t max_period, int R, std::uint64_t seed);

}  // namespace endim
