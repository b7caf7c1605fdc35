#include "auxtherm/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "auxtherm/errors.hpp"

namespace auxtherm::potentials {

namespace {
constexpr double kFourPi = 4.0 * std::numbers::pi;
}

PotentialModel::PotentialModel(std::vector<PoleTerm> terms) {
    if (terms.empty())
        throw std::invalid_argument("PotentialModel: at least one pole term required");

    for (const PoleTerm& t : terms) {
        if (!(t.mu > 0.0))
            throw std::invalid_argument("PotentialModel: pole parameter mu must be real and > 0");
        if (t.multiplicity != 1)
            throw std::invalid_argument("PotentialModel: only simple poles (multiplicity 1) supported");
        if (!std::isfinite(t.strength))
            throw std::invalid_argument("PotentialModel: pole strength must be finite");
    }

    // Coalesce equal-mu poles, keeping first-occurrence order; a term whose
    // net strength vanishes is no pole at all and is dropped.
    for (const PoleTerm& t : terms) {
        auto it = std::find_if(terms_.begin(), terms_.end(),
                               [&](const PoleTerm& u) { return u.mu == t.mu; });
        if (it == terms_.end())
            terms_.push_back(t);
        else
            it->strength += t.strength;
    }
    std::erase_if(terms_, [](const PoleTerm& t) { return t.strength == 0.0; });

    if (terms_.empty())
        throw std::invalid_argument("PotentialModel: all pole strengths cancelled");
}

double v_real(const PotentialModel& model, double r) {
    if (!(r > 0.0))
        throw std::domain_error("v_real: requires r > 0");
    double sum = 0.0;
    for (const PoleTerm& t : model.terms())
        sum += t.strength * std::exp(-t.mu * r) / r;
    return sum;
}

double v_fourier(const PotentialModel& model, double k2) {
    if (!(k2 >= 0.0))
        throw std::domain_error("v_fourier: requires k^2 >= 0");
    double sum = 0.0;
    for (const PoleTerm& t : model.terms())
        sum += t.strength * kFourPi / (k2 + t.mu * t.mu);
    return sum;
}

std::vector<FieldChannel> extract_channels(const PotentialModel& model,
                                           const KappaPolicy& policy) {
    std::vector<FieldChannel> channels;
    channels.reserve(model.terms().size());

    for (const PoleTerm& t : model.terms()) {
        const double abs_c = std::abs(t.strength);
        FieldChannel ch;
        ch.mu = t.mu;
        ch.coupling_sign = t.strength < 0.0 ? -1.0 : 1.0;

        auto it = policy.by_mu.find(t.mu);
        if (it == policy.by_mu.end()) {
            ch.kappa = 1.0;
            ch.gamma = std::sqrt(kFourPi * abs_c);
        } else {
            const KappaPolicy::Override& ov = it->second;
            if (!(ov.kappa > 0.0)) {
                std::ostringstream msg;
                msg << "extract_channels: kappa policy for mu = " << t.mu
                    << " yields kappa <= 0";
                throw config_error(msg.str());
            }
            ch.kappa = ov.kappa;
            if (ov.gamma < 0.0) {
                ch.gamma = std::sqrt(kFourPi * abs_c * ov.kappa);
            } else {
                // An explicit pair must still reproduce the pole's Yukawa
                // strength in the static limit.
                const double reproduced = ov.gamma * ov.gamma / (kFourPi * ov.kappa);
                if (std::abs(reproduced - abs_c) > 1e-9 * std::max(abs_c, 1e-300)) {
                    std::ostringstream msg;
                    msg << "extract_channels: (gamma, kappa) override for mu = " << t.mu
                        << " reproduces strength " << reproduced << ", pole has " << abs_c;
                    throw config_error(msg.str());
                }
                ch.gamma = ov.gamma;
            }
        }
        channels.push_back(ch);
    }

    std::sort(channels.begin(), channels.end(),
              [](const FieldChannel& a, const FieldChannel& b) { return a.mu < b.mu; });
    return channels;
}

double static_potential(std::span<const FieldChannel> channels, double r) {
    if (!(r > 0.0))
        throw std::domain_error("static_potential: requires r > 0");
    double sum = 0.0;
    for (const FieldChannel& ch : channels)
        sum += ch.coupling_sign * ch.gamma * ch.gamma / (kFourPi * ch.kappa) *
               std::exp(-ch.mu * r) / r;
    return sum;
}

} // namespace auxtherm::potentials
