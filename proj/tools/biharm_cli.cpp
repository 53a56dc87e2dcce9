#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "biharm/cli/commands.hpp"

int main(int argc, char** argv) {
    using biharm::cli::Command;

    CLI::App app{"Spectral analysis and boundary null-control for the hinged biharmonic "
                 "Schroedinger equation"};
    app.require_subcommand(1);

    std::string config;
    std::string out;
    Command selected = Command::spectrum;
    auto add = [&](const char* name, const char* help, Command c) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config, "scenario JSON file")->required();
        sub->add_option("--out", out, "output path prefix (overrides outputs.prefix)");
        sub->callback([&selected, c] { selected = c; });
    };
    add("spectrum", "eigenvalue table and resonance summary", Command::spectrum);
    add("observability", "weighted Gramian, observability constant, invisible modes",
        Command::observability);
    add("control", "synthesize a boundary null-control and certify it", Command::control);
    add("scan", "observability constant over a gamma grid", Command::scan);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : biharm::cli::kExitInvalid;
    }

    const auto result = biharm::cli::run_command(selected, config, out);
    std::cout << result.summary.dump() << '\n';
    return result.exit_code;
}
