#ifndef AUXTHERM_ORACLE_HPP
#define AUXTHERM_ORACLE_HPP

#include <span>

#include "auxtherm/types.hpp"

namespace auxtherm::oracle {

// Brute-force grid resolution. extent is the half-width of the (psi,chi)
// box in units of the integrand's Gaussian width.
struct GridSpec {
    int points_per_dim = 256;
    double extent = 10.0;

    void validate() const;
};

// Dense periodic-trapezoid evaluation of integral_0^1 exp(-x cos 2*pi*z) dz
// on points_per_dim^2 nodes. Validates classical::single_mode_y.
double y_integral_grid(double x, const GridSpec& grid = {});

// Direct 2-D tensor-grid evaluation of the (psi,chi) mode integral in log
// space, momentum Gaussians analytic. Desk scale (N <= 10); validates
// classical::mode_log_partition_exact.
double mode_log_partition_grid(const ModeIndex& mode, const Medium& medium, double beta,
                               const GridSpec& grid = {});
double mode_log_partition_grid_serial(const ModeIndex& mode, const Medium& medium,
                                      double beta, const GridSpec& grid = {});
double mode_partition_grid(const ModeIndex& mode, const Medium& medium, double beta,
                           const GridSpec& grid = {});

// Line average (1/L) integral_0^L exp(-sum_j x_j cos(k_j t)) dt by fine-step
// quadrature. For rationally independent k_j this converges to the product
// of I0(x_j) factors as L grows (equidistribution).
double weyl_ergodic_average(std::span<const double> amplitudes,
                            std::span<const double> wavenumbers, double length);
double weyl_ergodic_average_serial(std::span<const double> amplitudes,
                                   std::span<const double> wavenumbers, double length);

// Truncated power series sum_{m<terms} (x/2)^{2m} / (m!)^2 with compensated
// summation. Validates numerics::bessel_i0.
double i0_series(double x, int terms);

} // namespace auxtherm::oracle

#endif
