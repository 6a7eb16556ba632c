// sim: scenario runner for the SiV phonon-waveguide router

#include "routersim/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace sc = routersim::scenario;

namespace {

int run_file(const std::string& path, const std::optional<std::string>& out, bool verify_only) {
    try {
        sc::Scenario s = sc::load_file(path);
        if (verify_only && s.kind != sc::Kind::verify) {
            throw sc::ScenarioError(sc::kSchema, "kind",
                                    "sim verify needs kind verify, got " + std::string(sc::to_string(s.kind)));
        }
        if (out) {
            s.output = *out;
        }
        return sc::run_and_write(s);
    } catch (const sc::ScenarioError& e) {
        std::cerr << "sim: error [" << e.key() << "]: " << e.message() << "\n";
        return e.code();
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-Markovian dynamics of SiV emitters in a phonon waveguide"};
    app.set_version_flag("--version", std::string(ROUTERSIM_VERSION));
    app.require_subcommand(1);

    std::string file;
    std::optional<std::string> out;
    auto* run = app.add_subcommand("run", "Execute a scenario file");
    run->add_option("file", file, "Scenario YAML")->required();
    run->add_option("--out", out, "Override the output directory");

    auto* verify = app.add_subcommand("verify", "Check the Volterra solver against the discretized-bath oracle");
    verify->add_option("file", file, "Scenario YAML with kind verify")->required();
    verify->add_option("--out", out, "Override the output directory");

    std::string id;
    auto* preset = app.add_subcommand("preset", "Reproduce a figure preset");
    preset->add_option("id", id, "Figure id")->required()->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5", "fig6"}));
    preset->add_option("--out", out, "Output directory (default: the figure id)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return sc::kUsage;
    }

    if (*run) {
        return run_file(file, out, false);
    }
    if (*verify) {
        return run_file(file, out, true);
    }
    sc::Scenario s = sc::preset(id);
    if (out) {
        s.output = *out;
    }
    return sc::run_and_write(s);
}
