#ifndef AUXTHERM_TYPES_HPP
#define AUXTHERM_TYPES_HPP

#include <stdexcept>
#include <string>

namespace auxtherm {

// System parameters shared by the classical and quantum modules.
// Natural units (hbar = c = 1) by default; density is derived so that
// density() * volume == n_atoms holds identically.
struct Medium {
    double n_atoms = 1.0;
    double volume = 1.0;
    double mass = 1.0;
    double hbar = 1.0;
    double c = 1.0;

    double density() const { return n_atoms / volume; }

    void validate() const {
        if (n_atoms < 1.0)
            throw std::invalid_argument("Medium: n_atoms must be >= 1");
        if (volume <= 0.0)
            throw std::invalid_argument("Medium: volume must be > 0");
        if (mass <= 0.0)
            throw std::invalid_argument("Medium: mass must be > 0");
        if (hbar <= 0.0 || c <= 0.0)
            throw std::invalid_argument("Medium: hbar and c must be > 0");
    }
};

// One elementary auxiliary field: mass parameter mu, field-energy
// normalization kappa, atom-field coupling gamma. coupling_sign keeps the
// sign of the Yukawa strength the channel reproduces in the static limit;
// it never enters thermodynamics (only gamma^2/kappa does).
struct FieldChannel {
    double mu = 1.0;
    double kappa = 1.0;
    double gamma = 0.0;
    double coupling_sign = 1.0;

    // Relativistic quantum temperature scale of the channel, T_s = hbar*c*mu.
    double t_char(const Medium& m) const { return m.hbar * m.c * mu; }

    // Dimensionless coupling alpha_s = n*gamma^2 / (2*kappa*hbar*c*mu^3).
    double alpha(const Medium& m) const {
        return m.density() * gamma * gamma / (2.0 * kappa * m.hbar * m.c * mu * mu * mu);
    }

    void validate() const {
        if (mu <= 0.0)
            throw std::invalid_argument("FieldChannel: mu must be > 0");
        if (kappa <= 0.0)
            throw std::invalid_argument("FieldChannel: kappa must be > 0");
    }
};

// Label of one field oscillator: channel s and wavevector magnitude k.
struct ModeIndex {
    FieldChannel channel;
    double k = 0.0;

    void validate() const {
        channel.validate();
        if (k < 0.0)
            throw std::invalid_argument("ModeIndex: k must be >= 0");
    }
};

} // namespace auxtherm

#endif
