#ifndef AUXTHERM_ERRORS_HPP
#define AUXTHERM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace auxtherm {

// Bad or contradictory run configuration (CLI exit code 2).
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Temperature below the model's validity boundary: a mode's renormalized
// dispersion radicand is negative, or a reduced temperature sits at or
// below its critical value (CLI exit code 3).
class subcritical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A quadrature or iteration failed to reach the requested tolerance
// (CLI exit code 4). Carries the best estimate obtained so far.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double best_estimate, double error_bound)
        : std::runtime_error(what), best_estimate(best_estimate), error_bound(error_bound) {}

    double best_estimate;
    double error_bound;
};

// Root bracketing failed: no sign change over [lo, hi].
class bracket_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace auxtherm

#endif
