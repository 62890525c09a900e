// Command-line driver: selforg <relax|sweep|phonons|spectrum|figdata> --config cfg.json --out dir

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "selforg/commands.hpp"
#include "selforg/errors.hpp"
#include "selforg/io.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Self-organized atomic chains along a waveguide"};
    app.set_version_flag("--version", selforg::version_string);
    app.require_subcommand(1, 1);

    std::string config_path;
    std::string out_dir = ".";
    int threads = 1;
    std::uint64_t seed = 0;
    bool seed_given = false;

    for (const char* name : {"relax", "sweep", "phonons", "spectrum", "figdata"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "run configuration (JSON)");
        sub->add_option("--out", out_dir, "output directory")->capture_default_str();
        sub->add_option("--threads", threads, "worker threads for independent grid points")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option_function<std::uint64_t>(
            "--seed", [&](const std::uint64_t& s) { seed = s; seed_given = true; },
            "seed for initial perturbations");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    selforg::cli::RunConfig cfg;
    try {
        cfg = config_path.empty() ? selforg::cli::parse_run_config("{}")
                                  : selforg::cli::load_run_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "selforg " << command << ": error: " << e.what() << '\n';
        return selforg::cli::exit_code_for(e);
    }
    if (seed_given) {
        cfg.seed = seed;
        cfg.hash = selforg::fnv1a64(std::to_string(cfg.hash) + "/seed=" + std::to_string(seed));
    }
    cfg.threads = threads;
    cfg.out_dir = out_dir;
    return selforg::cli::run_command(command, cfg);
}
