// stepwise_main.cpp — command-line front end for the experiment harness.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stepwise/harness.hpp"

namespace {

using nlohmann::ordered_json;

ordered_json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return ordered_json::parse(buffer.str());
    } catch (const ordered_json::parse_error& e) {
        throw std::runtime_error("config parse error in '" + path + "': " + e.what());
    }
}

// --set values are parsed as JSON when possible (numbers, arrays, booleans)
// and fall back to plain strings.
ordered_json parse_override_value(const std::string& raw) {
    try {
        return ordered_json::parse(raw);
    } catch (const ordered_json::parse_error&) {
        return ordered_json(raw);
    }
}

struct CommonOptions {
    std::string config;
    std::string out;
    std::string format;
    std::string mode;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> overrides;
};

int run(const std::string& kind, const CommonOptions& opts) {
    ordered_json doc =
        opts.config.empty() ? ordered_json::object() : load_config_file(opts.config);
    if (!doc.is_object()) throw std::runtime_error("config file must hold a JSON object");

    if (doc.contains("kind") && doc["kind"] != kind)
        throw std::runtime_error("config kind '" + doc["kind"].get<std::string>() +
                                 "' does not match subcommand '" + kind + "'");
    doc["kind"] = kind;

    // Precedence: flag > file > default.  Generic overrides first, then the
    // named flags.
    for (const std::string& item : opts.overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::runtime_error("--set expects key=value, got '" + item + "'");
        doc[item.substr(0, eq)] = parse_override_value(item.substr(eq + 1));
    }
    if (!opts.out.empty()) doc["out"] = opts.out;
    if (!opts.format.empty()) doc["format"] = opts.format;
    if (!opts.mode.empty()) doc["mode"] = opts.mode;
    if (opts.seed) doc["seed"] = *opts.seed;

    const stepwise::harness::RunConfig config = stepwise::harness::parse_config(doc.dump());
    const stepwise::harness::ResultTable table = stepwise::harness::run_experiment(config);

    for (const std::string& err : table.row_errors)
        std::cerr << "error: " << err << "\n";
    stepwise::harness::emit(table, config.format, config.out);
    return table.row_errors.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator for stepwise isothermal processes and Carnot-like heat engines"};
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> kinds = {
        {"dip", "Run a single discrete isothermal process"},
        {"cycle", "Run one Carnot-like cycle"},
        {"sweep-n", "Sweep the step count N for one or more control curves"},
        {"sweep-nh", "Sweep the hot-branch power-law exponent"},
        {"emp-curve", "Efficiency at maximum power across Carnot efficiencies"},
    };

    std::map<std::string, CommonOptions> options;
    for (const auto& [name, description] : kinds) {
        auto* sub = app.add_subcommand(name, description);
        CommonOptions& o = options[name];
        sub->add_option("--config", o.config, "JSON config file");
        sub->add_option("--out", o.out, "Output path (default: stdout)");
        sub->add_option("--format", o.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--mode", o.mode, "Simulation route")
            ->check(CLI::IsMember({"exact", "dynamics"}));
        sub->add_option("--seed", o.seed, "Random seed");
        sub->add_option("--set", o.overrides,
                        "Override any config field as key=value (repeatable)");
    }

    CLI11_PARSE(app, argc, argv);

    const std::string kind = app.get_subcommands().front()->get_name();
    try {
        return run(kind, options[kind]);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
