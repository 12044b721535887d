#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "endim/error.hpp"

namespace endim::cli {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "endim-report/1";
inline constexpr const char* kToolVersion = "0.9.0";

const std::vector<std::string>& task_names();

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
};

struct RunReport {
    std::string task;
    std::string config_hash;
    std::string preset;
    Table table;
    Json summary = Json::object();
    std::vector<std::string> warnings;
    bool degraded = false;  // some value is only bracketed, or a budget ran out
    std::optional<double> wall_time;
};

// Schema errors: Error(Config) whose message starts with the JSON pointer of the bad node.
class ConfigError : public Error {
public:
    ConfigError(const std::string& pointer, const std::string& what)
        : Error(ErrorKind::Config, pointer + ": " + what), pointer_(pointer) {}
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

struct RunOptions {
    std::optional<std::uint64_t> budget;  // overrides budget.nodes
    bool timing = false;
};

std::vector<std::string> preset_names();
// Throws ConfigError for unknown names.
Json preset(const std::string& name);

// FNV-1a over the canonical dump.
std::string config_hash(const Json& config);

RunReport run(const Json& config, const RunOptions& opt = {});

enum class Format { Csv, Json };
std::string emit(const RunReport& r, Format f);

// Rounded to 6 significant digits; null when not finite.
Json num(double v);

}  // namespace endim::cli
