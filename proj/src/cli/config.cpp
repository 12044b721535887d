#include "context.hpp"

#include <map>

namespace endim::cli {

std::string pointer_join(const std::string& base, const std::string& key) {
    std::string out = base + "/";
    for (char c : key) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

Node::Node(const Json& v, std::string ptr) : v_(v), ptr_(std::move(ptr)) {}

void Node::fail(const std::string& what) const { throw ConfigError(ptr_.empty() ? "/" : ptr_, what); }

bool Node::has(const std::string& key) const { return v_.is_object() && v_.contains(key) && !v_[key].is_null(); }

Node Node::at(const std::string& key) const {
    if (!v_.is_object()) fail("expected an object");
    if (!has(key)) throw ConfigError(at_ptr(key), "missing required field");
    return Node(v_[key], at_ptr(key));
}

std::string Node::str(const std::string& key) const {
    Node n = at(key);
    if (!n.json().is_string()) n.fail("expected a string");
    return n.json().get<std::string>();
}

std::string Node::str(const std::string& key, const std::string& dflt) const { return has(key) ? str(key) : dflt; }

std::int64_t Node::integer(const std::string& key) const {
    Node n = at(key);
    if (!n.json().is_number_integer()) n.fail("expected an integer");
    return n.json().get<std::int64_t>();
}

std::int64_t Node::integer(const std::string& key, std::int64_t dflt) const {
    return has(key) ? integer(key) : dflt;
}

std::size_t Node::count(const std::string& key) const {
    std::int64_t v = integer(key);
    if (v < 0) at(key).fail("expected a non-negative integer");
    return static_cast<std::size_t>(v);
}

std::size_t Node::count(const std::string& key, std::size_t dflt) const { return has(key) ? count(key) : dflt; }

double Node::real(const std::string& key) const {
    Node n = at(key);
    if (!n.json().is_number()) n.fail("expected a number");
    return n.json().get<double>();
}

double Node::real(const std::string& key, double dflt) const { return has(key) ? real(key) : dflt; }

bool Node::flag(const std::string& key, bool dflt) const {
    if (!has(key)) return dflt;
    Node n = at(key);
    if (!n.json().is_boolean()) n.fail("expected true or false");
    return n.json().get<bool>();
}

std::vector<std::string> Node::strings(const std::string& key) const {
    Node n = at(key);
    if (!n.json().is_array()) n.fail("expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n.json().size(); ++i) {
        if (!n.json()[i].is_string()) throw ConfigError(n.at_ptr(std::to_string(i)), "expected a string");
        out.push_back(n.json()[i].get<std::string>());
    }
    return out;
}

std::vector<std::size_t> Node::counts(const std::string& key) const {
    Node n = at(key);
    if (!n.json().is_array()) n.fail("expected an array of integers");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n.json().size(); ++i) {
        const Json& e = n.json()[i];
        if (!e.is_number_integer() || e.get<std::int64_t>() < 0)
            throw ConfigError(n.at_ptr(std::to_string(i)), "expected a non-negative integer");
        out.push_back(e.get<std::size_t>());
    }
    return out;
}

namespace {

// Module errors raised while building an object are reported at that object.
template <class Fn>
auto guarded(const Node& n, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        std::string msg = e.what();
        const std::string tag = std::string(error_kind_name(ErrorKind::Config)) + ": ";
        if (msg.rfind(tag, 0) == 0) msg.erase(0, tag.size());
        n.fail(msg);
    }
}

std::int64_t as_int(const Node& n) {
    if (!n.json().is_number_integer()) n.fail("expected an integer");
    return n.json().get<std::int64_t>();
}

Point as_point(const Node& n, int dim) {
    const Json& v = n.json();
    if (!v.is_array() || v.size() != static_cast<std::size_t>(dim))
        n.fail("expected a point with " + std::to_string(dim) + " coordinate(s)");
    Point p{as_int(Node(v[0], n.at_ptr("0"))), 0};
    if (dim == 2) p.y = as_int(Node(v[1], n.at_ptr("1")));
    return p;
}

std::pair<std::int64_t, std::int64_t> as_range(const Node& n) {
    const Json& v = n.json();
    if (!v.is_array() || v.size() != 2) n.fail("expected [lo, hi]");
    auto lo = as_int(Node(v[0], n.at_ptr("0")));
    auto hi = as_int(Node(v[1], n.at_ptr("1")));
    if (hi <= lo) n.fail("empty range");
    return {lo, hi};
}

}  // namespace

Context::Context(const Json& root) : root_(root) {
    Node r(root, "");
    if (!root.is_object()) r.fail("config must be a JSON object");
    if (r.has("budget")) {
        Node b = r.at("budget");
        budget.table = b.count("table", budget.table);
        budget.nodes = b.count("nodes", budget.nodes);
    }
}

Node Context::resolve(const Node& n, const char* table) const {
    if (!n.json().is_string()) {
        if (!n.json().is_object()) n.fail("expected a name or an object");
        return n;
    }
    const std::string name = n.json().get<std::string>();
    Node r(root_, "");
    if (!r.has(table) || !root_[table].is_object() || !root_[table].contains(name))
        n.fail(std::string("unknown name '") + name + "' in " + table);
    if (++depth_ > 32) n.fail("reference chain too deep");
    return Node(root_[table][name], pointer_join(pointer_join("", table), name));
}

namespace {

struct DepthGuard {
    int& d;
    int start;
    explicit DepthGuard(int& depth) : d(depth), start(depth) {}
    ~DepthGuard() { d = start; }
};

}  // namespace

Word Context::word(const Node& n) const {
    if (!n.json().is_string()) n.fail("expected a word string");
    return guarded(n, [&] { return parse_word(n.json().get<std::string>()); });
}

Shape Context::shape(const Node& in, int dim) const {
    const Json& v = in.json();
    if (v.is_array()) {
        auto [lo, hi] = as_range(in);
        return dim == 1 ? Shape::interval(lo, hi) : Shape::box(dim, lo, hi);
    }
    if (!v.is_object()) in.fail("expected [lo, hi] or a shape object");
    if (in.has("box")) {
        auto [lo, hi] = as_range(in.at("box"));
        return Shape::box(dim, lo, hi);
    }
    if (in.has("rect")) {
        Node r = in.at("rect");
        if (!r.json().is_array() || r.json().size() != 2) r.fail("expected [[x0, y0], [x1, y1]]");
        Point lo = as_point(Node(r.json()[0], r.at_ptr("0")), 2);
        Point hi = as_point(Node(r.json()[1], r.at_ptr("1")), 2);
        if (dim != 2) r.fail("rect needs dimension 2");
        return Shape::rect(lo, hi);
    }
    if (in.has("points")) {
        Node p = in.at("points");
        if (!p.json().is_array()) p.fail("expected an array of points");
        std::vector<Point> pts;
        for (std::size_t i = 0; i < p.json().size(); ++i)
            pts.push_back(as_point(Node(p.json()[i], p.at_ptr(std::to_string(i))), dim));
        return guarded(in, [&] { return Shape(dim, pts); });
    }
    in.fail("shape needs one of box, rect, points");
}

IndexSet Context::set(const Node& in) const {
    DepthGuard g(depth_);
    Node n = resolve(in, "sets");
    const std::string type = n.str("type");
    return guarded(n, [&]() -> IndexSet {
        if (type == "empty") return IndexSet::empty_set(static_cast<int>(n.integer("dim", 1)));
        if (type == "full") return IndexSet::full(static_cast<int>(n.integer("dim", 1)));
        if (type == "non_negative") return IndexSet::non_negative();
        if (type == "power") return IndexSet::power(n.real("p"));
        if (type == "geometric") return IndexSet::geometric(n.integer("ratio"));
        if (type == "explicit") {
            int dim = static_cast<int>(n.integer("dim", 1));
            Node p = n.at("points");
            if (!p.json().is_array()) p.fail("expected an array");
            std::vector<Point> pts;
            for (std::size_t i = 0; i < p.json().size(); ++i) {
                Node e(p.json()[i], p.at_ptr(std::to_string(i)));
                pts.push_back(dim == 1 && e.json().is_number_integer() ? Point{as_int(e), 0} : as_point(e, dim));
            }
            return IndexSet::explicit_points(dim, pts, n.str("label", ""));
        }
        if (type == "blocks") {
            Node b = n.at("blocks");
            if (!b.json().is_array()) b.fail("expected an array of [from, to, stride]");
            std::vector<IndexSet::Block> bs;
            for (std::size_t i = 0; i < b.json().size(); ++i) {
                Node e(b.json()[i], b.at_ptr(std::to_string(i)));
                if (!e.json().is_array() || e.json().size() < 2 || e.json().size() > 3)
                    e.fail("expected [from, to] or [from, to, stride]");
                IndexSet::Block blk;
                blk.from = as_int(Node(e.json()[0], e.at_ptr("0")));
                blk.to = as_int(Node(e.json()[1], e.at_ptr("1")));
                if (e.json().size() == 3) blk.stride = as_int(Node(e.json()[2], e.at_ptr("2")));
                bs.push_back(blk);
            }
            return IndexSet::blocks(bs);
        }
        n.at("type").fail("unknown set type '" + type + "'");
    });
}

LanguageSource Context::system(const Node& in) const {
    DepthGuard g(depth_);
    Node n = resolve(in, "systems");
    const std::string type = n.str("type");
    const int dim = static_cast<int>(n.integer("dim", 1));
    if (dim != 1 && dim != 2) throw ConfigError(n.at_ptr("dim"), "dimension must be 1 or 2");
    if (type == "full") {
        auto k = n.integer("alphabet", 2);
        if (k < 1 || k > 36) throw ConfigError(n.at_ptr("alphabet"), "alphabet must be in 1..36");
        return LanguageSource::full_shift(static_cast<int>(k), dim);
    }
    if (type == "sft") {
        auto k = n.integer("alphabet", 2);
        if (k < 1 || k > 36) throw ConfigError(n.at_ptr("alphabet"), "alphabet must be in 1..36");
        Node f = n.at("forbidden");
        if (!f.json().is_array()) f.fail("expected an array");
        std::vector<Pattern> pats;
        for (std::size_t i = 0; i < f.json().size(); ++i) {
            Node e(f.json()[i], f.at_ptr(std::to_string(i)));
            if (e.json().is_string()) {
                Word w = word(e);
                if (w.empty()) e.fail("empty forbidden word");
                std::vector<Point> pts;
                for (std::size_t j = 0; j < w.size(); ++j) pts.push_back({static_cast<std::int64_t>(j), 0});
                if (dim == 2) e.fail("2-D patterns need points and symbols");
                pats.push_back({Shape(1, pts), w});
                continue;
            }
            // {"points": [...], "symbols": "..."}: symbols follow the listed point order.
            Node pn = e.at("points");
            Word sy = word(e.at("symbols"));
            if (!pn.json().is_array() || pn.json().size() != sy.size())
                pn.fail("points and symbols differ in length");
            std::map<Point, std::uint8_t> cells;
            for (std::size_t j = 0; j < sy.size(); ++j)
                cells[as_point(Node(pn.json()[j], pn.at_ptr(std::to_string(j))), dim)] = sy[j];
            std::vector<Point> pts;
            Word sorted;
            for (auto& [p, s] : cells) pts.push_back(p), sorted.push_back(s);
            pats.push_back({Shape(dim, pts), sorted});
        }
        return guarded(n, [&] { return LanguageSource::sft(static_cast<int>(k), dim, pats); });
    }
    if (type == "free_bits") return guarded(n, [&] { return LanguageSource::free_bits(set(n.at("set"))); });
    if (type == "product") {
        Node f = n.at("factors");
        if (!f.json().is_array() || f.json().empty()) f.fail("expected a non-empty array");
        std::vector<LanguageSource> parts;
        for (std::size_t i = 0; i < f.json().size(); ++i)
            parts.push_back(system(Node(f.json()[i], f.at_ptr(std::to_string(i)))));
        return guarded(n, [&] { return LanguageSource::product(parts); });
    }
    n.at("type").fail("unknown system type '" + type + "'");
}

BlockCode Context::code(const Node& in) const {
    DepthGuard g(depth_);
    Node n = resolve(in, "codes");
    const std::string type = n.str("type");
    const int dim = static_cast<int>(n.integer("dim", 1));
    return guarded(n, [&]() -> BlockCode {
        if (type == "identity") return BlockCode::identity(static_cast<int>(n.integer("alphabet", 2)), dim);
        if (type == "xor") return BlockCode::xor_code();
        if (type == "constant")
            return BlockCode::constant(static_cast<int>(n.integer("alphabet", 2)),
                                       static_cast<std::uint8_t>(n.integer("value", 0)),
                                       static_cast<int>(n.integer("out", 1)), dim);
        if (type == "projection") {
            std::vector<int> radices;
            for (auto r : n.counts("radices")) radices.push_back(static_cast<int>(r));
            return BlockCode::projection(radices, n.count("which"), dim);
        }
        if (type == "map") {
            Node r = n.at("rule");
            if (!r.json().is_object()) r.fail("expected an object from window words to symbols");
            std::map<std::string, std::string> rule;
            for (auto it = r.json().begin(); it != r.json().end(); ++it) {
                if (!it.value().is_string()) throw ConfigError(r.at_ptr(it.key()), "expected a string");
                rule[it.key()] = it.value().get<std::string>();
            }
            return BlockCode::from_map(shape(n.at("window"), dim), static_cast<int>(n.integer("in", 2)),
                                       static_cast<int>(n.integer("out", 2)), rule);
        }
        if (type == "compose") return compose(code(n.at("outer")), code(n.at("inner")));
        n.at("type").fail("unknown code type '" + type + "'");
    });
}

ClopenCover Context::cover(const Node& in, const LanguageSource& X) const {
    DepthGuard g(depth_);
    Node n = resolve(in, "covers");
    const std::string type = n.str("type");
    return guarded(n, [&]() -> ClopenCover {
        if (type == "partition") return cylinder_partition(X, shape(n.at("base"), X.dim()));
        if (type == "standard") {
            std::vector<Word> A1, A2;
            for (auto& s : n.strings("A1")) A1.push_back(parse_word(s));
            for (auto& s : n.strings("A2")) A2.push_back(parse_word(s));
            return standard_cover(X, shape(n.at("base"), X.dim()), A1, A2);
        }
        if (type == "explicit") {
            Node e = n.at("elements");
            if (!e.json().is_array()) e.fail("expected an array of word lists");
            std::vector<std::vector<Word>> els;
            for (std::size_t i = 0; i < e.json().size(); ++i) {
                Node el(e.json()[i], e.at_ptr(std::to_string(i)));
                if (!el.json().is_array()) el.fail("expected an array of words");
                std::vector<Word> ws;
                for (std::size_t j = 0; j < el.json().size(); ++j)
                    ws.push_back(word(Node(el.json()[j], el.at_ptr(std::to_string(j)))));
                els.push_back(ws);
            }
            return cover_validate(X, make_cover(shape(n.at("base"), X.dim()), els)).normalized;
        }
        if (type == "pullback") {
            // Cover of the codomain pulled back along code.
            Node tgt = n.at("target");
            LanguageSource Y = system(tgt);
            return pullback(X, code(n.at("code")), cover(n.at("cover"), Y));
        }
        if (type == "join") {
            Node c = n.at("covers");
            if (!c.json().is_array() || c.json().empty()) c.fail("expected a non-empty array");
            ClopenCover acc = cover(Node(c.json()[0], c.at_ptr("0")), X);
            for (std::size_t i = 1; i < c.json().size(); ++i)
                acc = join(X, acc, cover(Node(c.json()[i], c.at_ptr(std::to_string(i))), X));
            return acc;
        }
        n.at("type").fail("unknown cover type '" + type + "'");
    });
}

Factor Context::factor(const Node& params, const LanguageSource& X) const {
    if (!params.has("factor")) return Factor::trivial(X);
    Node n = params.at("factor");
    if (n.json().is_string()) {
        const std::string s = n.json().get<std::string>();
        if (s == "trivial") return Factor::trivial(X);
        if (s == "identity") return Factor::identity(X);
        n.fail("expected trivial, identity or {code, target}");
    }
    BlockCode c = code(n.at("code"));
    LanguageSource Y = n.has("target") ? system(n.at("target")) : LanguageSource::full_shift(c.out_alphabet(), X.dim());
    Factor f{X, Y, c};
    guarded(n, [&] {
        if (c.in_alphabet() != X.alphabet()) throw Error(ErrorKind::Config, "code input alphabet differs from the system");
        if (X.dim() == 1) validate_factor(f);
        return 0;
    });
    return f;
}

FolnerSequence Context::folner(const Node& params, int dim, std::size_t n_max) const {
    if (!params.has("folner")) return FolnerSequence::boxes(dim, n_max + 1);
    Node n = params.at("folner");
    const std::string type = n.str("type", "boxes");
    if (type == "boxes") return FolnerSequence::boxes(dim, n_max + 1);
    if (type == "explicit") {
        Node s = n.at("shapes");
        if (!s.json().is_array()) s.fail("expected an array of shapes");
        std::vector<Shape> shapes;
        for (std::size_t i = 0; i < s.json().size(); ++i)
            shapes.push_back(shape(Node(s.json()[i], s.at_ptr(std::to_string(i))), dim));
        auto F = guarded(n, [&] { return FolnerSequence::explicit_list(dim, shapes); });
        if (F.count() <= n_max)
            n.fail("sequence has " + std::to_string(F.count()) + " strictly growing entries, n_max needs " +
                   std::to_string(n_max + 1));
        return F;
    }
    n.at("type").fail("unknown folner type '" + type + "'");
}

PointSpec Context::point(const Node& n) const {
    if (n.json().is_string()) return guarded(n, [&] { return PointSpec::periodic(n.json().get<std::string>()); });
    // {"background": b, "cells": [[x, s], ...]}: finitely many exceptions in 1-D.
    auto bg = static_cast<std::uint8_t>(n.integer("background", 0));
    Node c = n.at("cells");
    if (!c.json().is_array()) c.fail("expected an array of [x, symbol]");
    std::map<Point, std::uint8_t> exc;
    for (std::size_t i = 0; i < c.json().size(); ++i) {
        Node e(c.json()[i], c.at_ptr(std::to_string(i)));
        if (!e.json().is_array() || e.json().size() != 2) e.fail("expected [x, symbol]");
        exc[{as_int(Node(e.json()[0], e.at_ptr("0"))), 0}] =
            static_cast<std::uint8_t>(as_int(Node(e.json()[1], e.at_ptr("1"))));
    }
    return PointSpec::finite_support(bg, exc);
}

}  // namespace endim::cli
