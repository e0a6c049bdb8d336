// fractalfn render|dimension|verify|minimax --config <path.json> [--out <dir>] [--grid M] [--svg]

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "fractalfn/cli/commands.hpp"
#include "fractalfn/cli/config.hpp"
#include "fractalfn/error.hpp"

namespace {

using namespace fractalfn;
using namespace fractalfn::cli;
using nlohmann::json;

int fail(int code, json body) {
    std::cerr << body.dump(2) << "\n";
    return code;
}

struct Options {
    std::string config;
    std::string out = ".";
    std::optional<std::size_t> grid;
    bool svg = false;
    std::string suite;
    std::string fixtures = FRACTALFN_FIXTURES_DIR;
};

void add_common(CLI::App* sub, Options& o, bool config_required) {
    auto* c = sub->add_option("--config", o.config, "experiment config (JSON)")->check(CLI::ExistingFile);
    if (config_required) c->required();
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--grid", o.grid, "override grid_M")->check(CLI::Range(3, 1 << 26));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"alpha-fractal functions: rendering, dimension, minimax tables and verification"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    Options o;
    auto* render = app.add_subcommand("render", "write graph.csv (and graph.svg, quotient.csv)");
    add_common(render, o, true);
    render->add_flag("--svg", o.svg, "also write graph.svg");
    auto* dimension = app.add_subcommand("dimension", "theoretical and empirical box dimension");
    add_common(dimension, o, true);
    auto* minimax = app.add_subcommand("minimax", "minimax error table with fractal bounds");
    add_common(minimax, o, true);
    auto* verify = app.add_subcommand("verify", "run inequality checks for a config or a named suite");
    add_common(verify, o, false);
    verify->add_option("--suite", o.suite, "named suite (full)");
    verify->add_option("--fixtures", o.fixtures, "fixture directory for --suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
        return fail(kExitInvalid, {{"error", "usage"}, {"message", e.what()}});
    }

    try {
        CommandResult result;
        if (verify->parsed() && !o.suite.empty()) {
            result = cmd_verify_suite(o.suite, o.fixtures, o.out);
        } else {
            if (o.config.empty()) throw ConfigError({"--config: required unless --suite is given"});
            const Config cfg = load_config(o.config, o.grid);
            if (render->parsed()) result = cmd_render(cfg, o.out, o.svg);
            else if (dimension->parsed()) result = cmd_dimension(cfg, o.out);
            else if (minimax->parsed()) result = cmd_minimax(cfg, o.out);
            else result = cmd_verify(cfg, o.out);
        }
        std::cout << result.report.dump(2) << "\n";
        return result.exit_code;
    } catch (const ConfigError& e) {
        return fail(kExitInvalid, {{"error", "config_validation"}, {"violations", e.violations()}});
    } catch (const IoError& e) {
        return fail(kExitInvalid, {{"error", "io"}, {"message", e.what()}});
    } catch (const ConvergenceError& e) {
        return fail(kExitNoConvergence, {{"error", "non_convergence"},
                                         {"message", e.what()},
                                         {"final_step", e.final_step()},
                                         {"iterations", e.iterations()}});
    } catch (const std::invalid_argument& e) {
        return fail(kExitInvalid, {{"error", "invalid_input"}, {"message", e.what()}});
    } catch (const std::exception& e) {
        return fail(kExitVerifyFailed, {{"error", "failure"}, {"message", e.what()}});
    }
}
