#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fracext/commands.hpp"

namespace {

struct Options {
    std::string config;
    std::string out;
    std::string format;
    std::optional<double> tol;
    std::optional<unsigned long long> seed;
    std::string suite = "all";
};

fracext::TableFormat pick_format(const std::string& flag, const std::string& configured, const std::string& path) {
    const std::string f = !flag.empty() ? flag : configured;
    if (f == "json") return fracext::TableFormat::json;
    if (f == "csv") return fracext::TableFormat::csv;
    if (!f.empty()) throw fracext::ConfigError("unknown format '" + f + "' (csv or json)");
    const bool json_ext = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    return json_ext ? fracext::TableFormat::json : fracext::TableFormat::csv;
}

void emit(const fracext::CommandOutcome& r, const std::string& path, fracext::TableFormat fmt) {
    const std::string text = fracext::to_string(r.table, fmt);
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw fracext::ConfigError("cannot open output file '" + path + "'");
    os << text;
    if (!os) throw fracext::ConfigError("failed writing output file '" + path + "'");
}

int run(const std::string& command, const Options& o) {
    using namespace fracext;
    if (command == "verify") {
        const auto r = cmd_verify(o.suite, o.seed.value_or(11));
        emit(r, o.out, pick_format(o.format, "", o.out));
        std::cerr << r.summary << "\n";
        return r.exit_code;
    }
    ProblemConfig c = load_config(o.config);
    if (o.tol) c.tolerance = *o.tol;
    if (o.seed) c.vector.seed = c.op.seed = *o.seed;
    const std::string path = o.out.empty() ? c.output.path : o.out;
    const auto fmt = pick_format(o.format, c.output.format, path);
    CommandOutcome r = command == "fracpow" ? cmd_fracpow(c) : command == "extend" ? cmd_extend(c) : cmd_trace(c);
    emit(r, path, fmt);
    std::cerr << r.summary << "\n";
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracext: fractional powers and extension problems via integrated families"};
    app.require_subcommand(1, 1);
    Options o;
    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* cfg = sub->add_option("--config", o.config, "problem configuration (JSON)");
        if (needs_config) cfg->required()->check(CLI::ExistingFile);
        sub->add_option("--out", o.out, "output path, '-' for stdout");
        sub->add_option("--format", o.format, "csv or json (default: from the path extension, else csv)")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", o.seed, "override the operator and vector seeds");
    };
    std::string command;
    for (const auto& [name, help] : {std::pair{"fracpow", "fractional power by several methods"},
                                     std::pair{"extend", "extension solution on a z-grid"},
                                     std::pair{"trace", "Neumann and quotient traces"}}) {
        auto* sub = app.add_subcommand(name, help);
        add_common(sub, true);
        sub->add_option("--tol", o.tol, "acceptance tolerance (overrides the config)")->check(CLI::PositiveNumber);
        sub->callback([&command, n = std::string(name)] { command = n; });
    }
    auto* verify = app.add_subcommand("verify", "run module invariant suites");
    add_common(verify, false);
    verify->add_option("--suite", o.suite, "suite name or 'all'");
    verify->callback([&command] { command = "verify"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : fracext::kExitUsage;
    }
    try {
        return run(command, o);
    } catch (const fracext::ConvergenceError& e) {
        std::cerr << "fracext: numerical failure: " << e.what() << "\n";
        return fracext::kExitNumerical;
    } catch (const fracext::Error& e) {
        std::cerr << "fracext: " << e.what() << "\n";
        return fracext::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "fracext: unexpected error: " << e.what() << "\n";
        return fracext::kExitNumerical;
    }
}
