#ifndef AUXTHERM_COMMANDS_HPP
#define AUXTHERM_COMMANDS_HPP

#include <iosfwd>
#include <string>

#include "auxtherm/config.hpp"

namespace auxtherm::cli {

struct CommandOptions {
    std::string out_dir;    // overrides [output] dir when nonempty
    std::string prefactor;  // overrides [output] prefactor when nonempty
    std::string inject_fault; // test hook for the validate command
};

// Channel table: mu, kappa, gamma, T_s, alpha, T_crit per channel plus the
// global threshold. Writes channels.csv when an output directory is set.
void run_poles(const RunConfig& config, const CommandOptions& opts, std::ostream& out);

// Universal-curve CSV, columns "tau,f,f2". The whole grid is validated
// against the tau > alpha boundary before any file is written.
void run_fcurve(const RunConfig& config, const CommandOptions& opts, std::ostream& out);

// Per-channel "T,tau,W,Cv" CSVs plus a "T,W,Cv" totals file.
void run_heatcap(const RunConfig& config, const CommandOptions& opts, std::ostream& out);

// "M,E" CSV demonstrating the linear growth of the classical field energy
// with the mode cutoff.
void run_classical_energy(const RunConfig& config, const CommandOptions& opts,
                          std::ostream& out);

// Oracle cross-validation report; returns the number of failed checks.
int run_validate(const RunConfig& config, const CommandOptions& opts, std::ostream& out);

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

} // namespace auxtherm::cli

#endif
