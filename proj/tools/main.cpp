#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "CLI11.hpp"
#include "config.hpp"
#include "suites.hpp"

int main(int argc, char** argv) {
    CLI::App app{"pinlab: pinning-model numerical laboratory"};
    app.require_subcommand(0, 0);

    std::string suite;
    std::string config_path;
    std::string out_dir;
    int workers = 0;
    long long seed = -1;

    app.add_option("suite", suite,
                   "one of asymptotics, homogeneous, quenched_grid, bounds_grid, "
                   "replica_checks, acceptance")
        ->required();
    app.add_option("--config", config_path, "path to the experiment config")->required();
    app.add_option("--out", out_dir, "output directory (overrides config and PINLAB_OUT)");
    app.add_option("--workers", workers, "worker threads for sample evaluation");
    app.add_option("--seed", seed, "master seed override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    pinlab::cli::ParsedConfig parsed = pinlab::cli::load_config(config_path);
    if (!parsed.ok()) {
        std::fprintf(stderr, "config errors in %s:\n", config_path.c_str());
        for (const auto& issue : parsed.errors) {
            if (issue.line > 0)
                std::fprintf(stderr, "  line %d: %s: %s\n", issue.line,
                             issue.key.c_str(), issue.message.c_str());
            else
                std::fprintf(stderr, "  %s: %s\n", issue.key.c_str(),
                             issue.message.c_str());
        }
        return 2;
    }
    for (const auto& note : parsed.notes)
        std::fprintf(stderr, "note: %s\n", note.c_str());

    pinlab::cli::ExperimentConfig config = parsed.config;
    config.suite = suite;
    if (workers > 0) config.workers = workers;
    if (seed >= 0) config.master_seed = static_cast<std::uint64_t>(seed);
    if (const char* env = std::getenv("PINLAB_OUT"); env && *env) config.out_dir = env;
    if (!out_dir.empty()) config.out_dir = out_dir;

    try {
        const auto t0 = std::chrono::steady_clock::now();
        const pinlab::cli::SuiteResult result = pinlab::cli::run_suite(config);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        pinlab::cli::write_outputs(config.out_dir, config, result, wall);
        for (const auto& msg : result.messages)
            std::fprintf(stderr, "check: %s\n", msg.c_str());
        std::printf("%s: %s (%.1fs, results in %s)\n", result.suite.c_str(),
                    result.all_pass ? "pass" : "FAIL", wall, config.out_dir.c_str());
        return result.all_pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
