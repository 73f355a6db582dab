#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "disclosure/cli.hpp"

int main(int argc, char** argv) {
    using namespace disclosure::cli;
    CLI::App app{"Solver for verifiable-disclosure games with mean-based receivers"};
    Command cmd;
    unsigned long long seed = 0;
    double target = 0.0;

    app.add_option("verb", cmd.verb, "Verb to run")->required()->check(CLI::IsMember(verbs()));
    app.add_option("input", cmd.input, "Input JSON file, or inline JSON starting with '{'")->required();
    app.add_option("-o,--output", cmd.output, "Write JSON here instead of stdout");
    app.add_option("--grid", cmd.grid, "LP grid size")->check(CLI::Range(51, 20001));
    app.add_option("--tol", cmd.tol, "Root-finding tolerance for ore-at");
    auto* seed_opt = app.add_option("--seed", seed, "Seed echoed into the output");
    app.add_option("--csv", cmd.csv_dir, "Directory for CSV plot data");
    auto* target_opt = app.add_option("--target", target, "Target payoff for ore-at");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (*seed_opt) cmd.seed = seed;
    if (*target_opt) cmd.target = target;
    return run(cmd, std::cout, std::cerr);
}
