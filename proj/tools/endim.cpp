#include <cerrno>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "endim/cli.hpp"
#include "endim/parallel.hpp"

using namespace endim;
using cli::Json;

namespace {

constexpr int kOk = 0, kConfig = 2, kDegraded = 3, kInvariant = 4;

Json load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cli::ConfigError("/", "cannot open " + path + ": " + std::strerror(errno));
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const Json::parse_error& e) {
        throw cli::ConfigError("/", std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"endim: cover complexity and entropy dimension of subshifts"};
    std::string config_path, out_path, format, preset;
    std::optional<std::uint64_t> budget;
    unsigned threads = 1;
    bool list = false, timing = false;
    app.add_option("--config", config_path, "experiment config (JSON)");
    app.add_option("--out", out_path, "output file; stdout when absent");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--budget", budget, "node budget for searches and set covers");
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--preset", preset, "run a shipped preset instead of --config");
    app.add_flag("--timing", timing, "add wall_time to the report");
    app.add_flag("--list-presets", list, "print preset names and exit");
    app.fallthrough();
    for (const auto& t : cli::task_names()) app.add_subcommand(t)->fallthrough();
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }
    if (list) {
        for (const auto& p : cli::preset_names()) std::cout << p << "\n";
        return kOk;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << "error: a subcommand is required\n" << app.help();
        return kConfig;
    }

    try {
        if (config_path.empty() == preset.empty())
            throw cli::ConfigError("/", "give exactly one of --config or --preset");
        Json config = preset.empty() ? load(config_path) : cli::preset(preset);
        const std::string task = app.get_subcommands().front()->get_name();
        if (!config.is_object()) throw cli::ConfigError("/", "config must be a JSON object");
        if (!config.contains("task")) config["task"] = task;
        if (config["task"] != task)
            throw cli::ConfigError("/task", "config task '" + config["task"].dump() + "' differs from subcommand");
        cli::Format fmt = cli::Format::Csv;
        if (format.empty() && config.contains("output") && config["output"].contains("format"))
            format = config["output"]["format"].get<std::string>();
        if (format == "json") fmt = cli::Format::Json;
        else if (!format.empty() && format != "csv") throw cli::ConfigError("/output/format", "expected csv or json");
        if (out_path.empty() && config.contains("output") && config["output"].contains("path"))
            out_path = config["output"]["path"].get<std::string>();

        set_thread_count(threads);
        cli::RunOptions opt;
        opt.budget = budget;
        opt.timing = timing;
        auto rep = cli::run(config, opt);
        const std::string text = cli::emit(rep, fmt);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot write " << out_path << ": " << std::strerror(errno) << "\n";
                return kConfig;
            }
            out << text;
        }
        for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
        return rep.degraded ? kDegraded : kOk;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::Invariant ? kInvariant : kConfig;
    } catch (const Json::exception& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: invariant: " << e.what() << "\n";
        return kInvariant;
    }
}
