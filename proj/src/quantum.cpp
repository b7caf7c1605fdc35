#include "auxtherm/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "auxtherm/classical.hpp"
#include "auxtherm/errors.hpp"

namespace auxtherm::quantum {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi4Over15 = kPi * kPi * kPi * kPi / 15.0;

void check_tau_domain(double alpha, double tau, const char* who) {
    if (!(alpha >= 0.0))
        throw std::domain_error(std::string(who) + ": requires alpha >= 0");
    if (!(tau > 0.0))
        throw std::domain_error(std::string(who) + ": requires tau > 0");
    if (!(tau > alpha)) {
        std::ostringstream msg;
        msg << who << ": tau = " << tau << " is at or below the critical value alpha = "
            << alpha;
        throw subcritical_error(msg.str());
    }
}

double correction_factor_q(double alpha, double tau, double Q) {
    if (alpha == 0.0)
        return 1.0; // decoupled field
    const double denom = (tau / alpha) * (tau * tau * Q * Q + 1.0) - 1.0;
    return 1.0 - 1.0 / (2.0 * denom);
}

double base_prefactor(Prefactor prefactor, const Medium& medium) {
    const double hbarc = medium.hbar * medium.c;
    const double hbarc3 = hbarc * hbarc * hbarc;
    switch (prefactor) {
    case Prefactor::paper: {
        const double two_pi_4 = std::pow(2.0 * kPi, 4);
        return medium.volume / (two_pi_4 * hbarc3);
    }
    case Prefactor::dos:
        return medium.volume / (2.0 * kPi * kPi * hbarc3);
    }
    return 0.0;
}

} // namespace

Prefactor prefactor_from_string(const std::string& s) {
    if (s == "paper")
        return Prefactor::paper;
    if (s == "dos")
        return Prefactor::dos;
    throw config_error("prefactor must be 'paper' or 'dos', got '" + s + "'");
}

ThermoPoint ThermoPoint::at(double T, std::span<const FieldChannel> channels,
                            const Medium& medium) {
    if (!(T > 0.0))
        throw std::domain_error("ThermoPoint: requires T > 0");
    ThermoPoint point;
    point.T = T;
    point.beta = 1.0 / T;
    point.tau.reserve(channels.size());
    for (const FieldChannel& ch : channels)
        point.tau.push_back(T / ch.t_char(medium));
    return point;
}

double beta_hbar_omega(double alpha, double Q, double tau) {
    check_tau_domain(alpha, tau, "beta_hbar_omega");
    if (!(Q >= 0.0))
        throw std::domain_error("beta_hbar_omega: requires Q >= 0");
    const double gap2 = (1.0 - alpha / tau) / (tau * tau);
    return std::sqrt(Q * Q + gap2);
}

double beta_hbar_omega(const FieldChannel& channel, const Medium& medium, double Q,
                       double tau) {
    return beta_hbar_omega(channel.alpha(medium), Q, tau);
}

double mode_partition_q(double x) {
    if (!(x > 0.0))
        throw std::domain_error("mode_partition_q: requires x = beta*hbar*omega > 0");
    return std::exp(-0.5 * x) / (-std::expm1(-x));
}

double energy_correction_factor(const FieldChannel& channel, const Medium& medium,
                                double beta, double k) {
    const double omega = classical::dispersion({channel, k}, medium, beta);
    if (omega == 0.0)
        throw subcritical_error("energy_correction_factor: omega vanishes at the boundary");
    const double n = medium.density();
    return medium.c * medium.c / (2.0 * omega * omega) * n * beta * channel.gamma *
           channel.gamma / (2.0 * channel.kappa);
}

double w_beta_correction_factor(const FieldChannel& channel, const Medium& medium,
                                double T, double k) {
    if (channel.gamma == 0.0)
        return 0.0;
    const double n = medium.density();
    const double k2mu2 = k * k + channel.mu * channel.mu;
    const double denom =
        2.0 * T * channel.kappa * k2mu2 / (n * channel.gamma * channel.gamma) - 1.0;
    return 1.0 / (2.0 * denom);
}

double mode_energy_q(const FieldChannel& channel, const Medium& medium, double k,
                     double beta) {
    if (!(beta > 0.0))
        throw std::domain_error("mode_energy_q: requires beta > 0");
    const double omega = classical::dispersion({channel, k}, medium, beta);
    if (omega == 0.0)
        throw subcritical_error("mode_energy_q: omega vanishes at the boundary");
    const double x = beta * medium.hbar * omega;
    const double harmonic = medium.hbar * omega * (0.5 + 1.0 / std::expm1(x));
    return harmonic * (1.0 - energy_correction_factor(channel, medium, beta, k));
}

double int_q_integrand(double alpha, double tau, double Q) {
    const double s = beta_hbar_omega(alpha, Q, tau);
    const double bose = s / std::expm1(s); // overflow in expm1 flushes the tail to 0
    return bose * correction_factor_q(alpha, tau, Q) * Q * Q;
}

double w_beta_integrand(const FieldChannel& channel, const Medium& medium, double T,
                        double k) {
    const double beta = 1.0 / T;
    const double omega = classical::dispersion({channel, k}, medium, beta);
    const double hw = medium.hbar * omega;
    const double bose_energy = hw / std::expm1(beta * hw);
    const double corr = 1.0 - w_beta_correction_factor(channel, medium, T, k);
    const double dos = medium.volume / std::pow(2.0 * kPi, 3) * 4.0 * kPi * k * k;
    return bose_energy * corr * dos;
}

double f_curve(double alpha, double tau, const numerics::QuadratureSpec& spec) {
    check_tau_domain(alpha, tau, "f_curve");
    const double gap2 = (1.0 - alpha / tau) / (tau * tau);
    auto integrand = [=](double Q) {
        const double s = std::sqrt(Q * Q + gap2);
        const double bose = s / std::expm1(s);
        return bose * correction_factor_q(alpha, tau, Q) * Q * Q;
    };
    return numerics::integrate_semi_infinite(integrand, spec).value / kPi4Over15;
}

double f2_curve(double alpha, double tau, const numerics::QuadratureSpec& spec) {
    check_tau_domain(alpha, tau, "f2_curve");
    // Steps sized by the distance to the tau = alpha singularity.
    const double scale = 0.5 * std::min(tau - alpha, tau);
    return numerics::derivative([&](double t) { return f_curve(alpha, t, spec); }, tau,
                                scale, alpha);
}

double field_energy(const FieldChannel& channel, const Medium& medium, double T,
                    const numerics::QuadratureSpec& spec, Prefactor prefactor) {
    if (!(T > 0.0))
        throw std::domain_error("field_energy: requires T > 0");
    const double tau = T / channel.t_char(medium);
    const double f = f_curve(channel.alpha(medium), tau, spec);
    return base_prefactor(prefactor, medium) * T * T * T * T * kPi4Over15 * f;
}

double heat_capacity_contrib(const FieldChannel& channel, const Medium& medium, double T,
                             const numerics::QuadratureSpec& spec, Prefactor prefactor) {
    if (!(T > 0.0))
        throw std::domain_error("heat_capacity_contrib: requires T > 0");
    const double t_char = channel.t_char(medium);
    const double alpha = channel.alpha(medium);
    const double tau = T / t_char;
    const double f = f_curve(alpha, tau, spec);
    const double f2 = f2_curve(alpha, tau, spec);
    const double t3 = T * T * T;
    return base_prefactor(prefactor, medium) * kPi4Over15 *
           (4.0 * t3 * f + t3 * T / t_char * f2);
}

namespace {

std::vector<double> validated_sorted_grid(double alpha, std::span<const double> tau_grid) {
    std::vector<double> bad;
    for (double tau : tau_grid)
        if (!(tau > alpha))
            bad.push_back(tau);
    if (!bad.empty()) {
        std::sort(bad.begin(), bad.end());
        std::ostringstream msg;
        msg << "curve_sweep: grid points at or below alpha = " << alpha << ":";
        for (double tau : bad)
            msg << ' ' << tau;
        throw subcritical_error(msg.str());
    }
    std::vector<double> sorted(tau_grid.begin(), tau_grid.end());
    std::sort(sorted.begin(), sorted.end());
    return sorted;
}

CurveSample sample_at(const FieldChannel& channel, const Medium& medium, double alpha,
                      double tau, const numerics::QuadratureSpec& spec,
                      Prefactor prefactor) {
    CurveSample sample;
    sample.tau = tau;
    sample.f = f_curve(alpha, tau, spec);
    sample.f2 = f2_curve(alpha, tau, spec);
    const double T = tau * channel.t_char(medium);
    sample.cv_contrib = base_prefactor(prefactor, medium) * kPi4Over15 *
                        (4.0 * T * T * T * sample.f +
                         T * T * T * T / channel.t_char(medium) * sample.f2);
    return sample;
}

} // namespace

std::vector<CurveSample> curve_sweep(const FieldChannel& channel, const Medium& medium,
                                     std::span<const double> tau_grid,
                                     const numerics::QuadratureSpec& spec,
                                     Prefactor prefactor) {
    const double alpha = channel.alpha(medium);
    const std::vector<double> grid = validated_sorted_grid(alpha, tau_grid);
    std::vector<CurveSample> samples(grid.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(grid.size()); ++i) {
        try {
            samples[static_cast<std::size_t>(i)] =
                sample_at(channel, medium, alpha, grid[static_cast<std::size_t>(i)], spec,
                          prefactor);
        } catch (...) {
#pragma omp critical
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return samples;
}

std::vector<CurveSample> curve_sweep_serial(const FieldChannel& channel,
                                            const Medium& medium,
                                            std::span<const double> tau_grid,
                                            const numerics::QuadratureSpec& spec,
                                            Prefactor prefactor) {
    const double alpha = channel.alpha(medium);
    const std::vector<double> grid = validated_sorted_grid(alpha, tau_grid);
    std::vector<CurveSample> samples(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        samples[i] = sample_at(channel, medium, alpha, grid[i], spec, prefactor);
    return samples;
}

double density_of_states(const Medium& medium, double k) {
    if (!(k >= 0.0))
        throw std::domain_error("density_of_states: requires k >= 0");
    return medium.volume * 4.0 * kPi * k * k / std::pow(2.0 * kPi, 3);
}

} // namespace auxtherm::quantum
