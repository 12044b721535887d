#pragma once

#include <string>

#include "endim/cli.hpp"
#include "endim/cover.hpp"
#include "endim/tuples.hpp"

namespace endim::cli {

std::string pointer_join(const std::string& base, const std::string& key);

// Read access to one JSON object with its pointer for error messages.
class Node {
public:
    Node(const Json& v, std::string ptr);

    const Json& json() const { return v_; }
    const std::string& ptr() const { return ptr_; }
    bool has(const std::string& key) const;
    Node at(const std::string& key) const;  // required
    std::string at_ptr(const std::string& key) const { return pointer_join(ptr_, key); }

    std::string str(const std::string& key) const;
    std::string str(const std::string& key, const std::string& dflt) const;
    std::int64_t integer(const std::string& key) const;
    std::int64_t integer(const std::string& key, std::int64_t dflt) const;
    std::size_t count(const std::string& key) const;
    std::size_t count(const std::string& key, std::size_t dflt) const;
    double real(const std::string& key, double dflt) const;
    double real(const std::string& key) const;
    bool flag(const std::string& key, bool dflt) const;
    std::vector<std::string> strings(const std::string& key) const;
    std::vector<std::size_t> counts(const std::string& key) const;

    [[noreturn]] void fail(const std::string& what) const;

private:
    const Json& v_;
    std::string ptr_;
};

class Context {
public:
    explicit Context(const Json& root);

    const Json& root() const { return root_; }
    Budget budget;

    LanguageSource system(const Node& n) const;
    BlockCode code(const Node& n) const;
    ClopenCover cover(const Node& n, const LanguageSource& X) const;
    IndexSet set(const Node& n) const;
    Shape shape(const Node& n, int dim) const;
    Word word(const Node& n) const;
    // Missing node: trivial factor.
    Factor factor(const Node& params, const LanguageSource& X) const;
    FolnerSequence folner(const Node& params, int dim, std::size_t n_max) const;
    PointSpec point(const Node& n) const;

private:
    const Json& root_;
    mutable int depth_ = 0;
    Node resolve(const Node& n, const char* table) const;
};

}  // namespace endim::cli
