#include <CLI11.hpp>

#include <iostream>

#include "pbqc/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"position-verification protocol and attack lab"};
    app.require_subcommand(1);

    pbqc::CliOptions opts;
    std::uint64_t seed = 0;
    std::string out_dir;
    bool seed_set = false, out_set = false;

    const char* names[] = {"run-protocol", "run-attack", "rates", "search-2q",
                           "search-3l",    "feasibility", "verify-stabilizers"};
    for (const char* name : names) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", opts.config_path, "scenario configuration file")->required();
        sub->add_option("--seed", seed, "override the configured seed")->each([&](const std::string&) {
            seed_set = true;
        });
        sub->add_option("--out", out_dir, "output directory")->each([&](const std::string&) {
            out_set = true;
        });
        sub->add_option("--format", opts.format, "report | table")
            ->check(CLI::IsMember({"report", "table"}));
        sub->add_flag("--quiet", opts.quiet, "suppress the report path line");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    opts.subcommand = app.get_subcommands().front()->get_name();
    if (seed_set) opts.seed = seed;
    if (out_set) opts.out_dir = out_dir;
    return pbqc::run_cli(opts, std::cout, std::cerr);
}
