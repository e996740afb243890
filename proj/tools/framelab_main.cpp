// framelab: config-driven experiments on frames, operator orbits, and
// suborbit approximations.
//
//   framelab <kind> --config <path> [--out <dir>] [--seed <int>]
//   framelab list-builtins

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "framelab/builtins.hpp"
#include "framelab/experiments.hpp"
#include "framelab/serialize.hpp"

namespace {

int run_kind(const std::string& kind, const std::string& config_path, const std::string& out,
             long long seed, bool seed_set) {
    framelab::ExperimentConfig cfg = framelab::parse_config_file(config_path);
    if (cfg.kind.empty()) cfg.kind = kind;
    if (cfg.kind != kind) {
        std::fprintf(stderr, "config field 'kind' (%s) does not match subcommand %s\n",
                     cfg.kind.c_str(), kind.c_str());
        return 2;
    }
    if (!out.empty()) cfg.output_dir = out;  // command line wins over the file
    if (seed_set) cfg.seed = static_cast<std::uint64_t>(seed);

    framelab::RunReport report = framelab::run(cfg);
    std::printf("report: %s/report.json\n", cfg.output_dir.c_str());
    std::printf("wall_seconds: %s\n", framelab::format_double(report.wall_seconds).c_str());
    for (const auto& [name, pass] : report.document["verdicts"].items())
        std::printf("%-38s %s\n", name.c_str(), pass.get<bool>() ? "pass" : "FAIL");
    return report.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frame laboratory: Carleson orbits, representation operators, "
                 "hypercyclic plans, suborbit approximation certificates"};
    app.require_subcommand(1);

    std::string config_path, out;
    long long seed = 0;
    bool seed_set = false;

    const std::vector<std::string> kinds = {"carleson", "represent", "approximate", "hypercyclic",
                                            "diagnostics"};
    std::string chosen;
    for (const auto& kind : kinds) {
        auto* sub = app.add_subcommand(kind, "run a '" + kind + "' experiment");
        sub->add_option("--config", config_path, "config file (JSON or key=value)")->required();
        sub->add_option("--out", out, "output directory (overrides config)");
        sub->add_option("--seed", seed, "seed for sampled checks (overrides config)")
            ->each([&seed_set](const std::string&) { seed_set = true; });
        sub->callback([&chosen, kind]() { chosen = kind; });
    }
    auto* lb = app.add_subcommand("list-builtins", "list builtin frame families");
    lb->callback([&chosen]() { chosen = "list-builtins"; });

    CLI11_PARSE(app, argc, argv);

    try {
        if (chosen == "list-builtins") {
            for (const auto& [name, desc] : framelab::list_builtins())
                std::printf("%-28s %s\n", name.c_str(), desc.c_str());
            return 0;
        }
        return run_kind(chosen, config_path, out, seed, seed_set);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
