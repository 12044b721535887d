#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "endim/error.hpp"

namespace endim {

using Rational = boost::rational<std::int64_t>;

// Element of Z or Z^2; the unused coordinate stays 0 in dimension 1.
struct Point {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend auto operator<=>(const Point&, const Point&) = default;
    Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
    Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
    Point operator-() const { return {-x, -y}; }
};

class Shape {
public:
    Shape() = default;
    Shape(int dim, std::vector<Point> pts);

    static Shape interval(std::int64_t lo, std::int64_t hi);  // [lo, hi)
    static Shape box(int dim, std::int64_t lo, std::int64_t hi);  // [lo, hi)^dim
    static Shape rect(Point lo, Point hi);  // [lo.x, hi.x) x [lo.y, hi.y)
    static Shape empty(int dim) { Shape s; s.dim_ = dim; return s; }

    int dim() const { return dim_; }
    std::size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    const std::vector<Point>& points() const { return pts_; }
    const Point& operator[](std::size_t i) const { return pts_[i]; }
    auto begin() const { return pts_.begin(); }
    auto end() const { return pts_.end(); }

    bool contains(const Point& p) const;
    // Position of p in the sorted point list, or -1.
    long index_of(const Point& p) const;
    Shape translate(const Point& g) const;
    bool is_interval() const;
    Point min_corner() const;
    Point max_corner() const;
    // Smallest box containing the shape.
    Shape hull() const;

    friend bool operator==(const Shape&, const Shape&) = default;

private:
    int dim_ = 1;
    std::vector<Point> pts_;
};

void require_dim(int dim);
void require_same_dim(const Shape& a, const Shape& b);

Shape shape_union(const Shape& a, const Shape& b);
Shape shape_intersection(const Shape& a, const Shape& b);
Shape shape_difference(const Shape& a, const Shape& b);
std::size_t symmetric_difference_size(const Shape& a, const Shape& b);
bool is_subset(const Shape& a, const Shape& b);

// KF = {k + f}.
Shape shape_product(const Shape& K, const Shape& F);
// {g : g + W subset of S}.
Shape erode(const Shape& S, const Shape& W);
// |KF sym-diff F| / |F|.
Rational invariance_defect(const Shape& K, const Shape& F);

std::string format_point(const Point& p, int dim);
std::string format_shape(const Shape& s);

class FolnerSequence {
public:
    enum class Kind { Boxes, Explicit };

    static FolnerSequence boxes(int dim, std::size_t count);
    // Cumulative-union normalization: F*_0 = {e} u F'_0, F*_k = F*_{k-1} u F'_k;
    // entries that do not strictly grow are dropped.
    static FolnerSequence explicit_list(int dim, const std::vector<Shape>& shapes);

    int dim() const { return dim_; }
    Kind kind() const { return kind_; }
    std::size_t count() const { return count_; }
    Shape shape(std::size_t n) const;
    std::size_t shape_size(std::size_t n) const;
    // Index into the source list for explicit sequences after normalization.
    const std::vector<std::size_t>& source_index() const { return source_; }

private:
    int dim_ = 1;
    Kind kind_ = Kind::Boxes;
    std::size_t count_ = 0;
    std::vector<Shape> shapes_;
    std::vector<std::size_t> source_;
};

class IndexSet {
public:
    enum class Kind { Empty, Full, NonNegative, Power, Explicit, Blocks };
    struct Block {
        std::int64_t from = 0;
        std::int64_t to = 0;  // exclusive
        std::int64_t stride = 1;
    };

    static IndexSet empty_set(int dim = 1);
    static IndexSet full(int dim = 1);
    static IndexSet non_negative();
    static IndexSet power(double p);
    static IndexSet explicit_points(int dim, std::vector<Point> pts, std::string label = {});
    static IndexSet blocks(std::vector<Block> bs);
    // {ratio^j : j >= 0} below 2^62, stored explicitly.
    static IndexSet geometric(std::int64_t ratio);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    const std::string& label() const { return label_; }
    double exponent() const { return p_; }
    const std::vector<Point>& points() const { return pts_; }
    const std::vector<Block>& block_list() const { return blocks_; }

    bool contains(const Point& g) const;
    bool contains(std::int64_t x) const { return contains(Point{x, 0}); }
    bool is_finite() const;
    // Sorted members of a 1-D set inside [lo, hi).
    std::vector<std::int64_t> members_in(std::int64_t lo, std::int64_t hi) const;
    // Smallest / largest member (1-D); nullopt when unbounded or empty.
    std::optional<std::int64_t> min_member() const;
    std::optional<std::int64_t> max_member() const;
    // Past this coordinate any window of length <= diam holds at most one member,
    // or every window is full; translates further right add nothing new.
    std::int64_t stable_after(std::int64_t diam) const;
    Shape restrict(const Shape& F) const;

private:
    Kind kind_ = Kind::Empty;
    int dim_ = 1;
    double p_ = 1.0;
    std::vector<Point> pts_;
    std::vector<Block> blocks_;
    std::string label_;
};

struct IndexCountRow {
    std::size_t n = 0;
    std::size_t count = 0;
    std::size_t size = 0;
    Rational density;
};

struct IndexCounts {
    std::vector<IndexCountRow> rows;
    bool unbounded = false;
};

IndexCounts index_counts(const IndexSet& S, const FolnerSequence& folner, std::size_t n_max);

}  // namespace endim
