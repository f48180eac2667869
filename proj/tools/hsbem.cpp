// hsbem command-line driver: solve / sweep / validate on a config file.
#include "hsbem/runner.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"hsbem - boundary-element solver for 2D half-space and cavity scattering"};
    app.require_subcommand(1);

    std::string config_path;
    hsbem::RunContext ctx;
    ctx.workers = 1;
    if (const char* env = std::getenv("HSBEM_WORKERS"))
        ctx.workers = std::max(1, std::atoi(env));

    app.add_option("--workers", ctx.workers, "worker count for sweeps")->capture_default_str();
    app.add_option("--out", ctx.out_dir, "output directory")->capture_default_str();
    app.add_flag("--quiet", ctx.quiet, "suppress progress output");

    auto* solve = app.add_subcommand("solve", "solve one problem and write field/density CSVs");
    solve->add_option("config", config_path, "config file")->required();
    solve->fallthrough();
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    sweep->add_option("config", config_path, "config file")->required();
    sweep->fallthrough();
    auto* validate = app.add_subcommand("validate", "compare against a reference oracle");
    validate->add_option("config", config_path, "config file")->required();
    validate->fallthrough();

    CLI11_PARSE(app, argc, argv);

    hsbem::RunConfig cfg;
    try {
        cfg = hsbem::load_config_file(config_path);
    } catch (const hsbem::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return hsbem::exit_config;
    }
    if (!ctx.quiet)
        for (const auto& w : cfg.warnings())
            std::cerr << "warning: " << w << "\n";

    if (solve->parsed())
        return hsbem::cmd_solve(cfg, ctx);
    if (sweep->parsed())
        return hsbem::cmd_sweep(cfg, ctx);
    return hsbem::cmd_validate(cfg, ctx);
}
