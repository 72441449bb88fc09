#include "cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"swell: embedded-boundary solver for Delta u = (e^u - r^2 e^-u)/eps^2"};
    app.require_subcommand(1);

    std::string solve_config;
    CLI::App* solve = app.add_subcommand("solve", "solve one configuration");
    solve->add_option("config", solve_config, "JSON configuration file")->required();

    std::string conv_config;
    int levels = 4;
    CLI::App* converge = app.add_subcommand("converge", "grid refinement study");
    converge->add_option("config", conv_config, "JSON configuration file")->required();
    converge->add_option("--levels", levels, "number of h, h/2, ... levels (2..8)");

    CLI::App* verify = app.add_subcommand("verify", "run the built-in acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1; // any usage error is invalid input
    }

    if (solve->parsed()) return swell::cmd_solve(solve_config);
    if (converge->parsed()) return swell::cmd_converge(conv_config, levels);
    if (verify->parsed()) return swell::cmd_verify(std::cout);
    return 1;
}
