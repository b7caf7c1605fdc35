#ifndef AUXTHERM_CLASSICAL_HPP
#define AUXTHERM_CLASSICAL_HPP

#include <span>
#include <vector>

#include "auxtherm/numerics.hpp"
#include "auxtherm/types.hpp"

namespace auxtherm::classical {

// Coordinate integral of one (s,k) factor after the Weyl reduction:
// integral_0^1 exp(-x cos 2*pi*z) dz = I0(x).
double single_mode_y(double x);

// Dispersion law omega_s(k, beta) = c * sqrt(k^2 + mu^2 - n*beta*gamma^2/(2*kappa)).
// Throws subcritical_error when the radicand is negative.
double dispersion(const ModeIndex& mode, const Medium& medium, double beta);

// Interaction-renormalized mass sqrt(mu^2 - n*beta*gamma^2/(2*kappa)).
double renormalized_mass(const FieldChannel& channel, const Medium& medium, double beta);

struct CriticalReport {
    std::vector<double> per_channel; // T_crit,s = n*gamma^2/(2*kappa*mu^2), channel order
    double global = 0.0;             // max over channels: the strictest validity bound
};

CriticalReport critical_temperature(std::span<const FieldChannel> channels,
                                    const Medium& medium);

// ln Z_s(k) from the full (psi,chi) integral, reduced to a radial 1-D
// quadrature in log space:
//   Z_s(k) = [2*pi*V*kappa/(beta*c^2)]
//          * 2*pi * integral_0^inf r exp(-beta*N*kappa*(k^2+mu^2) r^2/(2n)) I0(beta*gamma*r)^N dr.
// Requires kappa*(k^2+mu^2)/(2*n*beta*gamma^2) > 1/4.
double mode_log_partition_exact(const ModeIndex& mode, const Medium& medium, double beta,
                                const numerics::QuadratureSpec& spec = {});
double mode_partition_exact(const ModeIndex& mode, const Medium& medium, double beta,
                            const numerics::QuadratureSpec& spec = {});

// Quadratic-Hamiltonian closed form Z_s(k) = (2*pi/(beta*omega_s(k,beta)))^2.
double mode_log_partition_quadratic(const ModeIndex& mode, const Medium& medium, double beta);
double mode_partition_quadratic(const ModeIndex& mode, const Medium& medium, double beta);

// ln Z of the full system over an explicit isotropic k-grid:
//   ln Z = N ln V - ln N! + (3N/2) ln(2*pi*m/beta) + 2 sum_{s,k} ln(2*pi/(beta*omega_s)).
double classical_log_partition(std::span<const FieldChannel> channels, const Medium& medium,
                               double beta, std::span<const double> k_grid);
double classical_log_partition_serial(std::span<const FieldChannel> channels,
                                      const Medium& medium, double beta,
                                      std::span<const double> k_grid);

// Mean energy, evaluated from the closed form (not by differencing ln Z):
//   E = (3/2) N T + 2 M T - sum_{s,k} c^2 n gamma^2 / (2 kappa omega_s^2),
// with M the total mode count (channels x grid points).
double classical_energy(std::span<const FieldChannel> channels, const Medium& medium,
                        double beta, std::span<const double> k_grid);
double classical_energy_serial(std::span<const FieldChannel> channels, const Medium& medium,
                               double beta, std::span<const double> k_grid);

// Default isotropic mode cutoff: k_j = 2*pi*j / V^(1/3), j = 1..count.
std::vector<double> default_k_grid(const Medium& medium, int count);

} // namespace auxtherm::classical

#endif
