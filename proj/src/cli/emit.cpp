#include <sstream>

#include "endim/cli.hpp"

namespace endim::cli {

namespace {

std::string csv_cell(const Json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    if (v.is_structured()) return csv_cell(Json(v.dump()));
    return v.dump();
}

// Nested summaries flatten to dotted keys.
void flatten(const Json& v, const std::string& prefix, std::ostringstream& os) {
    if (v.is_object() && !v.empty()) {
        for (auto it = v.begin(); it != v.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
        return;
    }
    os << "# " << prefix << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

}  // namespace

std::string emit(const RunReport& r, Format f) {
    if (f == Format::Json) {
        Json rows = Json::array();
        for (const auto& row : r.table.rows) {
            Json o = Json::object();
            for (std::size_t i = 0; i < r.table.columns.size(); ++i) o[r.table.columns[i]] = row[i];
            rows.push_back(std::move(o));
        }
        Json j{{"schema", kSchema},     {"tool_version", kToolVersion}, {"task", r.task},
               {"config_hash", r.config_hash}, {"columns", r.table.columns}, {"rows", rows},
               {"summary", r.summary},  {"warnings", r.warnings},        {"degraded", r.degraded}};
        if (!r.preset.empty()) j["preset"] = r.preset;
        if (r.wall_time) j["wall_time"] = num(*r.wall_time);
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "# schema: " << kSchema << "\n";
    os << "# tool_version: " << kToolVersion << "\n";
    os << "# task: " << r.task << "\n";
    if (!r.preset.empty()) os << "# preset: " << r.preset << "\n";
    os << "# config_hash: " << r.config_hash << "\n";
    os << "# degraded: " << (r.degraded ? "true" : "false") << "\n";
    if (r.wall_time) os << "# wall_time: " << num(*r.wall_time).dump() << "\n";
    flatten(r.summary, "summary", os);
    for (const auto& w : r.warnings) os << "# warning: " << w << "\n";
    for (std::size_t i = 0; i < r.table.columns.size(); ++i) os << (i ? "," : "") << r.table.columns[i];
    os << "\n";
    for (const auto& row : r.table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
        os << "\n";
    }
    return os.str();
}

}  // namespace endim::cli
