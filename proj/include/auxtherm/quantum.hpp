#ifndef AUXTHERM_QUANTUM_HPP
#define AUXTHERM_QUANTUM_HPP

#include <optional>
#include <span>
#include <vector>

#include "auxtherm/numerics.hpp"
#include "auxtherm/types.hpp"

namespace auxtherm::quantum {

// Prefactor convention for the field energy W_s(T). `paper` is the
// V T^4/((2 pi)^4 (hbar c)^3) form; `dos` is the V T^4/(2 pi^2 (hbar c)^3)
// form implied by the density-of-states bookkeeping. The universal curve
// f(alpha, tau) and every critical-point result are prefactor-independent.
enum class Prefactor { paper, dos };

Prefactor prefactor_from_string(const std::string& s);

// A temperature state with per-channel reduced temperatures tau_s = T/T_s.
struct ThermoPoint {
    double T = 0.0;
    double beta = 0.0;
    std::vector<double> tau;

    static ThermoPoint at(double T, std::span<const FieldChannel> channels,
                          const Medium& medium);
};

// One point of the universal curve and its derived quantities.
struct CurveSample {
    double tau = 0.0;
    double f = 0.0;
    double f2 = 0.0;                  // df/dtau
    std::optional<double> cv_contrib; // heat-capacity contribution, when a medium is given
};

// Reduced mode energy beta*hbar*omega = sqrt(Q^2 + (1/tau^2)(1 - alpha/tau)).
// Requires tau > alpha (strict) and tau > 0.
double beta_hbar_omega(double alpha, double Q, double tau);
double beta_hbar_omega(const FieldChannel& channel, const Medium& medium, double Q,
                       double tau);

// Bose oscillator partition function exp(-x/2)/(1 - exp(-x)), x = beta*hbar*omega > 0.
double mode_partition_q(double x);

// Mean energy of one quantized harmonic, including the dispersion-law
// temperature-dependence correction:
//   [hbar w/2 + hbar w/(e^{beta hbar w}-1)] * (1 - c^2/(2 w^2) * n beta gamma^2/(2 kappa)).
double mode_energy_q(const FieldChannel& channel, const Medium& medium, double k,
                     double beta);

// Universal dimensionless field-energy curve, normalized to 1 as tau -> inf:
//   f(alpha,tau) = (15/pi^4) integral_0^inf [s/(e^s - 1)]
//                  * (1 - 1/(2[(tau/alpha)(tau^2 Q^2 + 1) - 1])) Q^2 dQ,
// with s = beta_hbar_omega(alpha, Q, tau). Defined for tau > alpha.
double f_curve(double alpha, double tau, const numerics::QuadratureSpec& spec = {});

// df/dtau, one-sided near the tau = alpha boundary where the curve is singular.
double f2_curve(double alpha, double tau, const numerics::QuadratureSpec& spec = {});

// The zero-point part of the total field energy is an ultraviolet-divergent
// integral; it has no finite value and is never returned as a number. All
// energies below are referenced from it.
inline constexpr bool kZeroPointEnergyDivergent = true;
inline constexpr const char* kZeroPointNote = "zero-point energy divergent (UV)";

// Field energy above zero point, W_s(T) = prefactor * (pi^4/15) * f(alpha_s, T/T_s).
double field_energy(const FieldChannel& channel, const Medium& medium, double T,
                    const numerics::QuadratureSpec& spec = {},
                    Prefactor prefactor = Prefactor::paper);

// Channel contribution to the heat capacity, dW_s/dT:
//   pref/T^4 terms: 4 T^3 (pi^4/15) f + T^4 (pi^4/15) (1/T_s) f2.
double heat_capacity_contrib(const FieldChannel& channel, const Medium& medium, double T,
                             const numerics::QuadratureSpec& spec = {},
                             Prefactor prefactor = Prefactor::paper);

// Evaluate (tau, f, f2, C_V contribution) over a tau grid; result sorted by
// tau ascending. Every grid point must satisfy tau > alpha_s or the whole
// sweep fails listing the offending points.
std::vector<CurveSample> curve_sweep(const FieldChannel& channel, const Medium& medium,
                                     std::span<const double> tau_grid,
                                     const numerics::QuadratureSpec& spec = {},
                                     Prefactor prefactor = Prefactor::paper);
std::vector<CurveSample> curve_sweep_serial(const FieldChannel& channel,
                                            const Medium& medium,
                                            std::span<const double> tau_grid,
                                            const numerics::QuadratureSpec& spec = {},
                                            Prefactor prefactor = Prefactor::paper);

// Isotropic density of states V * 4*pi*k^2 / (2*pi)^3 per unit dk.
double density_of_states(const Medium& medium, double k);

// Integrand helpers exposed for the cross-consistency identities.
double energy_correction_factor(const FieldChannel& channel, const Medium& medium,
                                double beta, double k);
double w_beta_correction_factor(const FieldChannel& channel, const Medium& medium,
                                double T, double k);
double w_beta_integrand(const FieldChannel& channel, const Medium& medium, double T,
                        double k);
double int_q_integrand(double alpha, double tau, double Q);

} // namespace auxtherm::quantum

#endif
