#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "auxtherm/commands.hpp"
#include "auxtherm/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"auxtherm: statistical thermodynamics of atoms coupled to Klein-Gordon "
                 "auxiliary fields"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string prefactor;
    std::string inject_fault;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "Run configuration file")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", out_dir, "Output directory (overrides [output] dir)");
        cmd->add_option("--prefactor", prefactor,
                        "Field-energy prefactor convention (paper|dos)")
            ->check(CLI::IsMember({"paper", "dos"}));
    };

    CLI::App* poles = app.add_subcommand(
        "poles", "Derive field channels from a pole list and print the channel table");
    CLI::App* fcurve =
        app.add_subcommand("fcurve", "Export the universal curve f(alpha, tau) as CSV");
    CLI::App* heatcap = app.add_subcommand(
        "heatcap", "Export per-channel field energy and heat capacity CSVs");
    CLI::App* classical_cmd = app.add_subcommand(
        "classical-energy", "Export classical field energy vs mode cutoff as CSV");
    CLI::App* validate =
        app.add_subcommand("validate", "Run the oracle cross-validation suite");
    for (CLI::App* cmd : {poles, fcurve, heatcap, classical_cmd, validate})
        add_common(cmd);
    validate->add_option("--inject-fault", inject_fault)->group(""); // test hook

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const auxtherm::cli::RunConfig config = auxtherm::cli::parse_config_file(config_path);
        const auxtherm::cli::CommandOptions opts{out_dir, prefactor, inject_fault};
        if (poles->parsed())
            auxtherm::cli::run_poles(config, opts, std::cout);
        else if (fcurve->parsed())
            auxtherm::cli::run_fcurve(config, opts, std::cout);
        else if (heatcap->parsed())
            auxtherm::cli::run_heatcap(config, opts, std::cout);
        else if (classical_cmd->parsed())
            auxtherm::cli::run_classical_energy(config, opts, std::cout);
        else if (validate->parsed())
            return auxtherm::cli::run_validate(config, opts, std::cout) == 0 ? 0 : 1;
        return 0;
    } catch (const auxtherm::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const auxtherm::subcritical_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const auxtherm::convergence_error& e) {
        std::cerr << "error: " << e.what() << " (best estimate "
                  << auxtherm::cli::format_double(e.best_estimate) << ", error bound "
                  << auxtherm::cli::format_double(e.error_bound) << ")\n";
        return 4;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
