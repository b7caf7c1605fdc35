#ifndef AUXTHERM_NUMERICS_HPP
#define AUXTHERM_NUMERICS_HPP

#include <functional>
#include <limits>

namespace auxtherm::numerics {

struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 4000;

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error_bound = 0.0;
    int evaluations = 0;
};

// Modified Bessel function I0(x), x >= 0, relative error <= 1e-12.
// Power series below the overflow region, asymptotic expansion above.
double bessel_i0(double x);

// ln I0(x) without overflow for x up to 1e6 and beyond.
double ln_bessel_i0(double x);

// Integral of f over (0, inf) for integrands decaying at least
// exponentially: adaptive Gauss-Kronrod panels on [0, Q_cut] plus an
// exponential-envelope tail bound that fixes Q_cut.
QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         const QuadratureSpec& spec = {});

// First derivative of f at x. Central differences with Richardson
// extrapolation; the initial step is scale * 1e-3. If the stencil would
// cross lower_bound, falls back to one-sided (forward) differences so no
// evaluation point drops below the bound.
double derivative(const std::function<double(double)>& f, double x, double scale,
                  double lower_bound = -std::numeric_limits<double>::infinity());

// Bracketing bisection/secant hybrid. Requires f(lo)*f(hi) < 0.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol = 1e-13, double abs_tol = 0.0);

// ln(n!): exact product for n <= 20, Stirling series beyond (relative
// error below 1e-10 everywhere it is used).
double ln_factorial(double n);

} // namespace auxtherm::numerics

#endif
