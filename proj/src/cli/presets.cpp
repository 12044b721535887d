#include <algorithm>
#include <map>

#include "endim/cli.hpp"

namespace endim::cli {

namespace {

const std::map<std::string, const char*>& table() {
    static const std::map<std::string, const char*> t{
        {"full-shift-dim", R"({
  "systems": {"X": {"type": "full", "alphabet": 2}},
  "covers": {"U": {"type": "partition", "base": [0, 1]}},
  "task": "dimension",
  "params": {"system": "X", "cover": "U", "n_max": 64}
})"},
        {"golden-mean-dim", R"({
  "systems": {"X": {"type": "sft", "alphabet": 2, "forbidden": ["11"]}},
  "covers": {"U": {"type": "partition", "base": [0, 1]}},
  "task": "dimension",
  "params": {"system": "X", "cover": "U", "n_max": 64}
})"},
        {"full-shift-family", R"({
  "systems": {"X": {"type": "full", "alphabet": 2}},
  "task": "dimension",
  "params": {"system": "X", "family": {"radius": 2}, "n_max": 10}
})"},
        {"xor-chain", R"({
  "systems": {"X": {"type": "full", "alphabet": 2}},
  "codes": {"pi": {"type": "xor"}},
  "covers": {"U": {"type": "partition", "base": [0, 1]}},
  "task": "dimension",
  "params": {"system": "X", "cover": "U", "factor": {"code": "pi", "target": "X"}, "n_max": 16,
             "absolute": true}
})"},
        {"squares-freebits-dim", R"({
  "sets": {"squares": {"type": "power", "p": 2}},
  "systems": {"X": {"type": "free_bits", "set": "squares"}},
  "covers": {"U": {"type": "partition", "base": [0, 1]}},
  "task": "dimension",
  "params": {"system": "X", "cover": "U", "n_max": 64}
})"},
        {"squares-subset-dim", R"({
  "sets": {"squares": {"type": "power", "p": 2}},
  "task": "subset-dim",
  "params": {"set": "squares", "n_max": 1024}
})"},
        {"remark-folner-dependence", R"({
  "sets": {"S": {"type": "blocks", "blocks": [[0, 6, 1], [1000, 1096, 8]]}},
  "systems": {"X": {"type": "free_bits", "set": "S"}},
  "covers": {"U": {"type": "partition", "base": [0, 1]}},
  "task": "folner",
  "params": {"mode": "minimizing", "system": "X", "cover": "U", "alpha": 0.3, "n_max": 1023}
})"},
        {"full-shift-genset", R"({
  "systems": {"X": {"type": "full", "alphabet": 2}},
  "covers": {"U": {"type": "partition", "base": [0, 1]}},
  "sets": {"squares": {"type": "power", "p": 2}},
  "task": "genset",
  "params": {"system": "X", "cover": "U", "set": "squares", "n_max": 64}
})"},
        {"xor-genset", R"({
  "systems": {"X": {"type": "full", "alphabet": 2}},
  "codes": {"pi": {"type": "xor"}},
  "covers": {"U": {"type": "partition", "base": [0, 1]}},
  "task": "genset",
  "params": {"system": "X", "cover": "U", "set": {"type": "non_negative"},
             "factor": {"code": "pi"}, "n_max": 16, "tau": 0.1}
})"},
        {"interpolated-powers", R"({
  "task": "construct",
  "params": {"kind": "interpolated", "set": {"type": "geometric", "ratio": 2}, "alpha": 0.5, "n_max": 1024}
})"},
        {"pos-upper-evens", R"({
  "systems": {"X": {"type": "full", "alphabet": 2}},
  "covers": {"U": {"type": "partition", "base": [0, 1]}},
  "task": "construct",
  "params": {"kind": "pos-upper", "system": "X", "cover": "U",
             "set": {"type": "blocks", "blocks": [[0, 1048576, 2]]}, "n_max": 1024}
})"},
        {"full-shift-thm-genset", R"({
  "systems": {"X": {"type": "full", "alphabet": 2}},
  "covers": {"U": {"type": "standard", "base": [0, 1], "A1": ["0"], "A2": ["1"]}},
  "task": "construct",
  "params": {"kind": "thm", "system": "X", "cover": "U", "n_max": 100}
})"},
        {"golden-mean-independence", R"({
  "systems": {"X": {"type": "sft", "alphabet": 2, "forbidden": ["11"]}},
  "task": "independence",
  "params": {"system": "X", "base": [0, 1], "A1": ["0"], "A2": ["1"], "B": [0, 12]}
})"},
        {"xor-independence", R"({
  "systems": {"X": {"type": "full", "alphabet": 2}},
  "covers": {"U": {"type": "standard", "base": [0, 1], "A1": ["0"], "A2": ["1"]}},
  "task": "independence",
  "params": {"system": "X", "cover": "U", "factor": {"code": {"type": "xor"}}, "B": [0, 10]}
})"},
        {"full-shift-tuples", R"({
  "systems": {"X": {"type": "full", "alphabet": 2}},
  "task": "tuple-dim",
  "params": {"system": "X", "tuples": [["0", "1"]], "ks": [1, 2], "n_max": 9}
})"},
        {"full-shift-tuple-sample", R"({
  "systems": {"X": {"type": "full", "alphabet": 2}},
  "task": "tuple-dim",
  "params": {"system": "X", "sample": {"count": 4, "arity": 2, "max_period": 3, "seed": 42},
             "ks": [1], "n_max": 8}
})"},
        {"full-vs-fixedpoint", R"({
  "systems": {"X": {"type": "full", "alphabet": 2}, "Y": {"type": "full", "alphabet": 1}},
  "task": "joining",
  "params": {"mode": "search", "X": "X", "Y": "Y", "w_max": 2}
})"},
        {"full-vs-full", R"({
  "systems": {"X": {"type": "full", "alphabet": 2}},
  "task": "joining",
  "params": {"mode": "search", "X": "X", "Y": "X", "w_max": 2}
})"},
        {"full-vs-golden", R"({
  "systems": {"X": {"type": "full", "alphabet": 2}, "Y": {"type": "sft", "alphabet": 2, "forbidden": ["11"]}},
  "task": "joining",
  "params": {"mode": "search", "X": "X", "Y": "Y", "w_max": 2}
})"},
        {"identity-probe", R"({
  "systems": {"X": {"type": "full", "alphabet": 2}},
  "task": "joining",
  "params": {"mode": "probe", "system": "X", "factor": "identity", "kind": "minimal", "window": 2}
})"},
        {"folner-defect", R"({
  "task": "folner",
  "params": {"mode": "defect", "K": [0, 2], "n_max": 16}
})"},
        {"folner-defect-2d", R"({
  "task": "folner",
  "params": {"mode": "defect", "dim": 2, "K": {"points": [[0, 0], [1, 0], [0, 1]]}, "n_max": 8}
})"},
    };
    return t;
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : table()) out.push_back(k);
    out.push_back("full-shift");
    std::sort(out.begin(), out.end());
    return out;
}

Json preset(const std::string& name_in) {
    const std::string name = name_in == "full-shift" ? "full-shift-dim" : name_in;
    auto it = table().find(name);
    if (it == table().end()) throw ConfigError("/preset", "unknown preset '" + name_in + "'");
    Json j = Json::parse(it->second);
    j["preset"] = name_in;
    return j;
}

}  // namespace endim::cli
