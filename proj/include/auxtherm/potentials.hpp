#ifndef AUXTHERM_POTENTIALS_HPP
#define AUXTHERM_POTENTIALS_HPP

#include <map>
#include <span>
#include <vector>

#include "auxtherm/types.hpp"

namespace auxtherm::potentials {

// One simple pole of the Fourier transform v~(k^2): contributes
// strength * 4*pi / (k^2 + mu^2) in k-space, i.e. a Yukawa term
// strength * exp(-mu*r)/r in real space. Only multiplicity 1 is supported.
struct PoleTerm {
    double mu = 1.0;
    double strength = 0.0;
    int multiplicity = 1;
};

// A potential given as a finite list of simple poles. The constructor
// coalesces terms with equal mu, drops terms whose net strength is zero,
// and rejects empty or invalid inputs.
class PotentialModel {
public:
    explicit PotentialModel(std::vector<PoleTerm> terms);

    std::span<const PoleTerm> terms() const { return terms_; }

private:
    std::vector<PoleTerm> terms_;
};

// Real-space potential v(r) = sum_s C_s exp(-mu_s r)/r, r > 0.
double v_real(const PotentialModel& model, double r);

// k-space transform v~(k^2) = sum_s C_s * 4*pi / (k^2 + mu_s^2), k^2 >= 0.
double v_fourier(const PotentialModel& model, double k2);

// How to split a pole's strength into (gamma, kappa). The default sets
// kappa = 1 and gamma = sqrt(4*pi*|C|). An override keyed by mu may fix
// kappa alone (gamma derived so the static limit still reproduces C) or
// both; a (gamma, kappa) pair that fails to reproduce |C| is rejected.
struct KappaPolicy {
    struct Override {
        double kappa = 1.0;
        double gamma = -1.0; // < 0 means "derive from kappa and strength"
    };
    std::map<double, Override> by_mu;
};

// One FieldChannel per pole, sorted by ascending mu. Channel parameters
// are chosen so that sign * gamma^2/(4*pi*kappa) * exp(-mu r)/r equals the
// pole's Yukawa term.
std::vector<FieldChannel> extract_channels(const PotentialModel& model,
                                           const KappaPolicy& policy = {});

// Static-limit reconstruction of v(r) from extracted channels; used to
// round-trip against v_real.
double static_potential(std::span<const FieldChannel> channels, double r);

} // namespace auxtherm::potentials

#endif
