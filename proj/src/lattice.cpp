#include "endim/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace endim {

void require_dim(int dim) {
    if (dim != 1 && dim != 2)
        throw Error(ErrorKind::UnsupportedDimension, "dimension " + std::to_string(dim));
}

void require_same_dim(const Shape& a, const Shape& b) {
    if (a.dim() != b.dim())
        throw Error(ErrorKind::DimensionMismatch,
                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
}

Shape::Shape(int dim, std::vector<Point> pts) : dim_(dim), pts_(std::move(pts)) {
    require_dim(dim);
    if (dim == 1)
        for (auto& p : pts_) p.y = 0;
    std::sort(pts_.begin(), pts_.end());
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
}

Shape Shape::interval(std::int64_t lo, std::int64_t hi) {
    std::vector<Point> pts;
    for (std::int64_t i = lo; i < hi; ++i) pts.push_back({i, 0});
    Shape s;
    s.dim_ = 1;
    s.pts_ = std::move(pts);
    return s;
}

Shape Shape::box(int dim, std::int64_t lo, std::int64_t hi) {
    require_dim(dim);
    if (dim == 1) return interval(lo, hi);
    return rect({lo, lo}, {hi, hi});
}

Shape Shape::rect(Point lo, Point hi) {
    std::vector<Point> pts;
    for (std::int64_t i = lo.x; i < hi.x; ++i)
        for (std::int64_t j = lo.y; j < hi.y; ++j) pts.push_back({i, j});
    Shape s;
    s.dim_ = 2;
    s.pts_ = std::move(pts);
    return s;
}

bool Shape::contains(const Point& p) const {
    return std::binary_search(pts_.begin(), pts_.end(), p);
}

long Shape::index_of(const Point& p) const {
    auto it = std::lower_bound(pts_.begin(), pts_.end(), p);
    if (it == pts_.end() || *it != p) return -1;
    return static_cast<long>(it - pts_.begin());
}

Shape Shape::translate(const Point& g) const {
    Shape s = *this;
    for (auto& p : s.pts_) p = p + g;
    return s;
}

bool Shape::is_interval() const {
    if (dim_ != 1 || pts_.empty()) return false;
    return pts_.back().x - pts_.front().x + 1 == static_cast<std::int64_t>(pts_.size());
}

Point Shape::min_corner() const {
    if (pts_.empty()) throw Error(ErrorKind::EmptyShape, "min_corner of empty shape");
    Point m = pts_.front();
    for (const auto& p : pts_) m = {std::min(m.x, p.x), std::min(m.y, p.y)};
    return m;
}

Point Shape::max_corner() const {
    if (pts_.empty()) throw Error(ErrorKind::EmptyShape, "max_corner of empty shape");
    Point m = pts_.front();
    for (const auto& p : pts_) m = {std::max(m.x, p.x), std::max(m.y, p.y)};
    return m;
}

Shape Shape::hull() const {
    Point lo = min_corner(), hi = max_corner();
    if (dim_ == 1) return interval(lo.x, hi.x + 1);
    return rect(lo, {hi.x + 1, hi.y + 1});
}

Shape shape_union(const Shape& a, const Shape& b) {
    require_same_dim(a, b);
    std::vector<Point> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return Shape(a.dim(), std::move(out));
}

Shape shape_intersection(const Shape& a, const Shape& b) {
    require_same_dim(a, b);
    std::vector<Point> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return Shape(a.dim(), std::move(out));
}

Shape shape_difference(const Shape& a, const Shape& b) {
    require_same_dim(a, b);
    std::vector<Point> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return Shape(a.dim(), std::move(out));
}

std::size_t symmetric_difference_size(const Shape& a, const Shape& b) {
    require_same_dim(a, b);
    std::size_t common = shape_intersection(a, b).size();
    return a.size() + b.size() - 2 * common;
}

bool is_subset(const Shape& a, const Shape& b) {
    require_same_dim(a, b);
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Shape shape_product(const Shape& K, const Shape& F) {
    require_same_dim(K, F);
    std::vector<Point> out;
    out.reserve(K.size() * F.size());
    for (const auto& k : K)
        for (const auto& f : F) out.push_back(k + f);
    return Shape(K.dim(), std::move(out));
}

Shape erode(const Shape& S, const Shape& W) {
    require_same_dim(S, W);
    if (W.empty()) return S;
    std::vector<Point> out;
    const Point w0 = W[0];
    for (const auto& s : S) {
        Point g = s - w0;
        bool ok = true;
        for (const auto& w : W)
            if (!S.contains(g + w)) { ok = false; break; }
        if (ok) out.push_back(g);
    }
    return Shape(S.dim(), std::move(out));
}

Rational invariance_defect(const Shape& K, const Shape& F) {
    if (F.empty()) throw Error(ErrorKind::EmptyShape, "invariance defect of empty F");
    Shape KF = shape_product(K, F);
    return Rational(static_cast<std::int64_t>(symmetric_difference_size(KF, F)),
                    static_cast<std::int64_t>(F.size()));
}

std::string format_point(const Point& p, int dim) {
    if (dim == 1) return std::to_string(p.x);
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

std::string format_shape(const Shape& s) {
    if (s.is_interval())
        return "[" + std::to_string(s[0].x) + "," + std::to_string(s.points().back().x + 1) + ")";
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) os << ",";
        os << format_point(s[i], s.dim());
    }
    os << "}";
    return os.str();
}

// ---- Folner sequences ----

FolnerSequence FolnerSequence::boxes(int dim, std::size_t count) {
    require_dim(dim);
    if (count == 0) throw Error(ErrorKind::Config, "folner count must be positive");
    FolnerSequence f;
    f.dim_ = dim;
    f.kind_ = Kind::Boxes;
    f.count_ = count;
    return f;
}

FolnerSequence FolnerSequence::explicit_list(int dim, const std::vector<Shape>& shapes) {
    require_dim(dim);
    FolnerSequence f;
    f.dim_ = dim;
    f.kind_ = Kind::Explicit;
    Shape acc(dim, {Point{}});
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        require_same_dim(acc, shapes[i]);
        Shape next = shape_union(acc, shapes[i]);
        if (!f.shapes_.empty() && next.size() == acc.size()) continue;
        acc = std::move(next);
        f.shapes_.push_back(acc);
        f.source_.push_back(i);
    }
    f.count_ = f.shapes_.size();
    if (f.count_ == 0) throw Error(ErrorKind::Config, "empty explicit folner list");
    return f;
}

Shape FolnerSequence::shape(std::size_t n) const {
    if (n >= count_) throw Error(ErrorKind::Config, "folner index " + std::to_string(n) + " out of range");
    if (kind_ == Kind::Boxes) return Shape::box(dim_, 0, static_cast<std::int64_t>(n) + 1);
    return shapes_[n];
}

std::size_t FolnerSequence::shape_size(std::size_t n) const {
    if (kind_ == Kind::Boxes) return dim_ == 1 ? n + 1 : (n + 1) * (n + 1);
    return shape(n).size();
}

// ---- index sets ----

namespace {

std::int64_t power_term(std::int64_t j, double p) {
    if (p == std::floor(p) && p >= 1 && p <= 6) {
        std::int64_t v = 1;
        for (int i = 0; i < static_cast<int>(p); ++i) v *= j;
        return v;
    }
    return static_cast<std::int64_t>(std::floor(std::pow(static_cast<long double>(j), p) + 1e-12L));
}

}  // namespace

IndexSet IndexSet::empty_set(int dim) {
    IndexSet s;
    s.kind_ = Kind::Empty;
    s.dim_ = dim;
    s.label_ = "empty";
    return s;
}

IndexSet IndexSet::full(int dim) {
    IndexSet s;
    s.kind_ = Kind::Full;
    s.dim_ = dim;
    s.label_ = "full";
    return s;
}

IndexSet IndexSet::non_negative() {
    IndexSet s;
    s.kind_ = Kind::NonNegative;
    s.label_ = "nonneg";
    return s;
}

IndexSet IndexSet::power(double p) {
    if (!(p > 0)) throw Error(ErrorKind::Config, "power exponent must be positive");
    IndexSet s;
    s.kind_ = Kind::Power;
    s.p_ = p;
    std::ostringstream os;
    os << "power(" << p << ")";
    s.label_ = os.str();
    return s;
}

IndexSet IndexSet::explicit_points(int dim, std::vector<Point> pts, std::string label) {
    IndexSet s;
    s.kind_ = Kind::Explicit;
    s.dim_ = dim;
    Shape sorted(dim, std::move(pts));
    s.pts_ = sorted.points();
    s.label_ = label.empty() ? "explicit(" + std::to_string(s.pts_.size()) + ")" : std::move(label);
    return s;
}

IndexSet IndexSet::geometric(std::int64_t ratio) {
    if (ratio < 2) throw Error(ErrorKind::Config, "geometric ratio must be at least 2");
    std::vector<Point> pts;
    for (std::int64_t v = 1; v < (std::int64_t{1} << 62) / ratio; v *= ratio) pts.push_back({v, 0});
    return explicit_points(1, std::move(pts), std::to_string(ratio) + "^j");
}

IndexSet IndexSet::blocks(std::vector<Block> bs) {
    IndexSet s;
    s.kind_ = Kind::Blocks;
    for (const auto& b : bs)
        if (b.stride < 1) throw Error(ErrorKind::Config, "block stride must be positive");
    std::sort(bs.begin(), bs.end(), [](const Block& a, const Block& b) {
        return std::tie(a.from, a.to, a.stride) < std::tie(b.from, b.to, b.stride);
    });
    s.blocks_ = std::move(bs);
    s.label_ = "blocks(" + std::to_string(s.blocks_.size()) + ")";
    return s;
}

bool IndexSet::contains(const Point& g) const {
    switch (kind_) {
    case Kind::Empty: return false;
    case Kind::Full: return true;
    case Kind::NonNegative: return g.x >= 0 && g.y == 0;
    case Kind::Explicit: return std::binary_search(pts_.begin(), pts_.end(), g);
    case Kind::Blocks:
        if (g.y != 0) return false;
        for (const auto& b : blocks_)
            if (g.x >= b.from && g.x < b.to && (g.x - b.from) % b.stride == 0) return true;
        return false;
    case Kind::Power: {
        if (g.y != 0 || g.x < 0) return false;
        auto j = static_cast<std::int64_t>(std::pow(static_cast<long double>(g.x), 1.0L / p_));
        for (std::int64_t k = std::max<std::int64_t>(0, j - 2); k <= j + 2; ++k)
            if (power_term(k, p_) == g.x) return true;
        return false;
    }
    }
    return false;
}

bool IndexSet::is_finite() const {
    return kind_ == Kind::Empty || kind_ == Kind::Explicit || kind_ == Kind::Blocks;
}

std::vector<std::int64_t> IndexSet::members_in(std::int64_t lo, std::int64_t hi) const {
    std::vector<std::int64_t> out;
    if (hi <= lo) return out;
    switch (kind_) {
    case Kind::Empty: break;
    case Kind::Full:
        for (auto x = lo; x < hi; ++x) out.push_back(x);
        break;
    case Kind::NonNegative:
        for (auto x = std::max<std::int64_t>(lo, 0); x < hi; ++x) out.push_back(x);
        break;
    case Kind::Explicit:
        for (const auto& p : pts_)
            if (p.y == 0 && p.x >= lo && p.x < hi) out.push_back(p.x);
        break;
    case Kind::Blocks:
        for (const auto& b : blocks_) {
            std::int64_t start = b.from;
            if (lo > start) start += ((lo - start + b.stride - 1) / b.stride) * b.stride;
            for (auto x = start; x < std::min(hi, b.to); x += b.stride) out.push_back(x);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        break;
    case Kind::Power: {
        std::int64_t j = 0;
        if (lo > 0) j = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::pow(static_cast<long double>(lo), 1.0L / p_)) - 2);
        for (;; ++j) {
            std::int64_t v = power_term(j, p_);
            if (v >= hi) break;
            if (v >= lo && (out.empty() || out.back() != v)) out.push_back(v);
        }
        break;
    }
    }
    return out;
}

std::optional<std::int64_t> IndexSet::min_member() const {
    switch (kind_) {
    case Kind::Empty:
    case Kind::Full: return std::nullopt;
    case Kind::NonNegative:
    case Kind::Power: return 0;
    case Kind::Explicit: return pts_.empty() ? std::nullopt : std::optional(pts_.front().x);
    case Kind::Blocks: {
        std::optional<std::int64_t> m;
        for (const auto& b : blocks_)
            if (b.to > b.from && (!m || b.from < *m)) m = b.from;
        return m;
    }
    }
    return std::nullopt;
}

std::optional<std::int64_t> IndexSet::max_member() const {
    switch (kind_) {
    case Kind::Explicit: return pts_.empty() ? std::nullopt : std::optional(pts_.back().x);
    case Kind::Blocks: {
        std::optional<std::int64_t> m;
        for (const auto& b : blocks_) {
            if (b.to <= b.from) continue;
            std::int64_t last = b.from + ((b.to - 1 - b.from) / b.stride) * b.stride;
            if (!m || last > *m) m = last;
        }
        return m;
    }
    default: return std::nullopt;
    }
}

std::int64_t IndexSet::stable_after(std::int64_t diam) const {
    switch (kind_) {
    case Kind::Empty:
    case Kind::Full:
    case Kind::NonNegative: return 0;
    case Kind::Explicit:
    case Kind::Blocks: return max_member().value_or(0);
    case Kind::Power: {
        if (p_ <= 1) return 0;
        std::int64_t j = 0;
        while (power_term(j + 1, p_) - power_term(j, p_) <= diam) ++j;
        return power_term(j, p_);
    }
    }
    return 0;
}

Shape IndexSet::restrict(const Shape& F) const {
    std::vector<Point> out;
    for (const auto& g : F)
        if (contains(g)) out.push_back(g);
    return Shape(F.dim(), std::move(out));
}

IndexCounts index_counts(const IndexSet& S, const FolnerSequence& folner, std::size_t n_max) {
    IndexCounts out;
    if (n_max >= folner.count()) n_max = folner.count() - 1;
    // 1-D boxes: prefix counts of the members in [0, n_max].
    std::vector<std::int64_t> mem;
    const bool line = folner.dim() == 1 && folner.kind() == FolnerSequence::Kind::Boxes;
    if (line) mem = S.members_in(0, static_cast<std::int64_t>(n_max) + 1);
    std::size_t k = 0;
    for (std::size_t n = 0; n <= n_max; ++n) {
        std::size_t c = 0, size = 0;
        if (line) {
            while (k < mem.size() && mem[k] <= static_cast<std::int64_t>(n)) ++k;
            c = k;
            size = n + 1;
        } else {
            Shape F = folner.shape(n);
            c = S.restrict(F).size();
            size = F.size();
        }
        out.rows.push_back({n, c, size,
                            Rational(static_cast<std::int64_t>(c), static_cast<std::int64_t>(size))});
    }
    std::size_t half = n_max / 2;
    out.unbounded = !out.rows.empty() && out.rows.back().count > out.rows[half].count;
    return out;
}

}  // namespace endim
