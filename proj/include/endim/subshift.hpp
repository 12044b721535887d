#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "endim/lattice.hpp"

namespace endim {

using Word = std::vector<std::uint8_t>;

// Exact counter with a long-double shadow once the 64-bit value overflows.
struct Count {
    std::uint64_t value = 0;
    bool overflow = false;
    long double approx = 0;

    static Count of(std::uint64_t v) { return {v, false, static_cast<long double>(v)}; }
    static Count pow2(std::size_t k);
    Count& operator+=(const Count& o);
    friend Count operator+(Count a, const Count& b) { return a += b; }
    friend Count operator*(const Count& a, const Count& b);
    friend bool operator<(const Count& a, const Count& b);
    friend bool operator==(const Count& a, const Count& b);
    double ln() const;
    std::string str() const;
};

// Budgets shared by the table, set-cover and enumeration engines.
struct Budget {
    std::uint64_t table = std::uint64_t{1} << 22;
    std::uint64_t nodes = 1'000'000;
};

enum class Mode { Exact, LocalUpper, Bounds };
const char* mode_name(Mode m);

struct Pattern {
    Shape shape;
    Word sym;  // aligned with shape.points()

    std::uint8_t at(const Point& p) const;
    friend bool operator==(const Pattern&, const Pattern&) = default;
};

std::string word_string(const Word& w);
Word parse_word(const std::string& s);

class LanguageSource {
public:
    enum class Kind { Sft, FreeBits, Product };

    static LanguageSource sft(int alphabet, int dim, std::vector<Pattern> forbidden);
    static LanguageSource full_shift(int alphabet, int dim = 1) { return sft(alphabet, dim, {}); }
    // Forbidden 1-D words placed at offset 0.
    static LanguageSource sft_words(int alphabet, const std::vector<std::string>& words);
    static LanguageSource free_bits(IndexSet S);
    static LanguageSource product(std::vector<LanguageSource> factors);

    Kind kind() const { return kind_; }
    int alphabet() const { return alphabet_; }
    int dim() const { return dim_; }
    const std::vector<Pattern>& forbidden() const { return forbidden_; }
    const IndexSet& index_set() const { return *S_; }
    const std::vector<LanguageSource>& factors() const { return factors_; }
    // Hull length of the longest forbidden pattern (1-D).
    std::int64_t window_span() const;
    std::string describe() const;

private:
    Kind kind_ = Kind::Sft;
    int alphabet_ = 2;
    int dim_ = 1;
    std::vector<Pattern> forbidden_;
    std::shared_ptr<IndexSet> S_;
    std::vector<LanguageSource> factors_;
};

struct PatternTable {
    Shape shape;
    std::vector<Word> rows;  // sorted, distinct
    Mode mode = Mode::Exact;
    int margin = 0;
    bool empty_language = false;
    bool unreachable = false;
    // Filled for every table; in bounds mode rows may be absent.
    Count lower, upper;

    std::size_t size() const { return rows.size(); }
    long find(const Word& w) const;
};

struct LanguageSize {
    Count lower, upper;
    Mode mode = Mode::Exact;
    bool exact() const { return mode == Mode::Exact; }
};

// Transition graph of a 1-D SFT: states are words of length `memory`,
// pruned to the essential part (every state on a bi-infinite path).
class SftGraph {
public:
    // min_memory raises the state length, e.g. so a block code's window fits one edge.
    explicit SftGraph(const LanguageSource& sft, int min_memory = 1);

    int alphabet() const { return alphabet_; }
    int memory() const { return memory_; }
    std::size_t num_states() const { return states_.size(); }
    bool empty() const { return states_.empty(); }
    const Word& state_word(std::size_t s) const { return states_[s]; }
    // Successor on symbol a, or -1.
    int next(std::size_t s, int a) const { return next_[s * alphabet_ + a]; }

    PatternTable language(const Shape& shape, const Budget& budget) const;
    Count count(const Shape& shape) const;
    // Language counts for intervals of length 1..L.
    std::vector<Count> interval_counts(std::size_t L) const;

private:
    int alphabet_ = 2;
    int memory_ = 1;
    std::vector<Word> states_;
    std::vector<int> next_;
};

// Normalized supports and their counts for free_bits over intervals.
class FreeBitsCounter {
public:
    FreeBitsCounter(const IndexSet& S, std::size_t max_len, const Budget& budget);
    bool exact() const { return exact_; }
    LanguageSize count(std::size_t L) const;

private:
    const IndexSet* S_;
    std::size_t max_len_;
    bool exact_ = true;
    std::vector<std::uint64_t> by_max_;  // number of normalized supports with given max
};

PatternTable language(const LanguageSource& X, const Shape& shape, int margin = 0,
                      const Budget& budget = {});
LanguageSize language_size(const LanguageSource& X, const Shape& shape, const Budget& budget = {});

class BlockCode {
public:
    BlockCode() = default;
    BlockCode(Shape window, int in_alphabet, int out_alphabet, std::vector<std::uint8_t> rule);

    static BlockCode identity(int alphabet, int dim = 1);
    static BlockCode xor_code();
    static BlockCode constant(int in_alphabet, std::uint8_t c, int out_alphabet = 1, int dim = 1);
    // Coordinate projection of a product alphabet (first factor most significant).
    static BlockCode projection(const std::vector<int>& radices, std::size_t which, int dim = 1);
    static BlockCode from_map(Shape window, int in_alphabet, int out_alphabet,
                              const std::map<std::string, std::string>& rule);

    const Shape& window() const { return window_; }
    int in_alphabet() const { return in_; }
    int out_alphabet() const { return out_; }
    int dim() const { return window_.dim(); }
    const std::vector<std::uint8_t>& rule() const { return rule_; }
    std::uint8_t eval(const Pattern& p, const Point& g) const;
    std::uint8_t eval_word(const Word& w) const;  // w aligned with window points
    bool is_trivial() const { return out_ == 1; }

    friend bool operator==(const BlockCode&, const BlockCode&) = default;

private:
    Shape window_;
    int in_ = 2;
    int out_ = 2;
    std::vector<std::uint8_t> rule_;
};

// outer after inner.
BlockCode compose(const BlockCode& outer, const BlockCode& inner);

Pattern apply_code(const BlockCode& code, const Pattern& p);
Pattern apply_code(const BlockCode& code, const Pattern& p, const Shape& out_shape);

PatternTable fiber_patterns(const LanguageSource& X, const BlockCode& code, const Pattern& y_pat,
                            const Shape& shape, const Budget& budget = {});

LanguageSource product_system(const std::vector<LanguageSource>& sources);

struct PointSpec {
    enum class Kind { Periodic, FiniteSupport };
    Kind kind = Kind::Periodic;
    int dim = 1;
    std::vector<Word> period;  // rows; a single row in 1-D
    std::uint8_t background = 0;
    std::map<Point, std::uint8_t> exceptions;

    static PointSpec periodic(const std::string& word);
    static PointSpec finite_support(std::uint8_t background, std::map<Point, std::uint8_t> exc, int dim = 1);
    std::uint8_t at(const Point& g) const;
    std::string describe() const;
};

Pattern point_pattern(const PointSpec& x, const Shape& shape);

// X -> Y via code.
struct Factor {
    LanguageSource X;
    LanguageSource Y;
    BlockCode code;

    static Factor trivial(const LanguageSource& X);
    static Factor identity(const LanguageSource& X);
};

// Checks apply_code(language(X, F + window)) lands in language(Y, F) on a test interval.
void validate_factor(const Factor& f, std::size_t test_len = 4);

struct FactorTriple {
    LanguageSource X, Y, Z;
    std::optional<BlockCode> pi;
    BlockCode pi_X;
    std::optional<BlockCode> pi_Y;

    // pi_X == pi_Y o pi on every admissible window pattern.
    bool commutes(const Budget& budget = {}) const;
    Factor factor_X() const { return {X, Z, pi_X}; }
    Factor factor_Y() const;
    Factor factor_pi() const;
};

}  // namespace endim
