#include <iostream>

#include <CLI11.hpp>

#include "henkin/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Proof extraction from validity witnesses"};
    app.require_subcommand(1);
    henkin::RunConfig cfg;

    for (const char* name : {"check", "extract", "roundtrip", "nbe", "info"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--theory", cfg.theory_file, "theory file, one formula per line");
        sub->add_option("--formula", cfg.formula, "conclusion A0");
        sub->add_option("--proof", cfg.proof_file, "object proof file");
        sub->add_option("--witness", cfg.witness, "canonical validity witness");
        sub->add_option("--engine", cfg.engine)->check(CLI::IsMember({"core", "kont"}));
        sub->add_flag("--trace", cfg.trace);
        sub->add_option("--format", cfg.format)->check(CLI::IsMember({"tree", "term"}));
        sub->add_option("--max-replays", cfg.max_replays)->check(CLI::PositiveNumber);
        sub->callback([&cfg, sub] { cfg.command = sub->get_name(); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    return henkin::run_command(cfg, std::cout, std::cerr);
}
