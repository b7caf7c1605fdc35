#include "auxtherm/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "auxtherm/errors.hpp"

namespace auxtherm::classical {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// n*beta*gamma^2/(2*kappa): the interaction shift of mu^2.
double mass_shift(const FieldChannel& ch, const Medium& medium, double beta) {
    return medium.density() * beta * ch.gamma * ch.gamma / (2.0 * ch.kappa);
}

[[noreturn]] void throw_subcritical(const char* who, double k, double radicand) {
    std::ostringstream msg;
    msg << who << ": temperature below the mode's critical value (k = " << k
        << ", radicand = " << radicand << ")";
    throw subcritical_error(msg.str());
}

double quadratic_radicand(const ModeIndex& mode, const Medium& medium, double beta) {
    const FieldChannel& ch = mode.channel;
    return mode.k * mode.k + ch.mu * ch.mu - mass_shift(ch, medium, beta);
}

} // namespace

double single_mode_y(double x) { return numerics::bessel_i0(x); }

double dispersion(const ModeIndex& mode, const Medium& medium, double beta) {
    mode.validate();
    const double radicand = quadratic_radicand(mode, medium, beta);
    if (radicand < 0.0)
        throw_subcritical("dispersion", mode.k, radicand);
    return medium.c * std::sqrt(radicand);
}

double renormalized_mass(const FieldChannel& channel, const Medium& medium, double beta) {
    channel.validate();
    const double radicand = channel.mu * channel.mu - mass_shift(channel, medium, beta);
    if (radicand < 0.0)
        throw_subcritical("renormalized_mass", 0.0, radicand);
    return std::sqrt(radicand);
}

CriticalReport critical_temperature(std::span<const FieldChannel> channels,
                                    const Medium& medium) {
    if (channels.empty())
        throw std::invalid_argument("critical_temperature: channel list is empty");
    CriticalReport report;
    report.per_channel.reserve(channels.size());
    for (const FieldChannel& ch : channels) {
        ch.validate();
        const double t_crit =
            medium.density() * ch.gamma * ch.gamma / (2.0 * ch.kappa * ch.mu * ch.mu);
        report.per_channel.push_back(t_crit);
        report.global = std::max(report.global, t_crit);
    }
    return report;
}

double mode_log_partition_exact(const ModeIndex& mode, const Medium& medium, double beta,
                                const numerics::QuadratureSpec& spec) {
    mode.validate();
    medium.validate();
    if (!(beta > 0.0))
        throw std::domain_error("mode_log_partition_exact: requires beta > 0");

    const FieldChannel& ch = mode.channel;
    const double n = medium.density();
    const double big_n = medium.n_atoms;
    const double k2mu2 = mode.k * mode.k + ch.mu * ch.mu;

    if (ch.gamma != 0.0) {
        const double ratio =
            ch.kappa * k2mu2 / (2.0 * n * beta * ch.gamma * ch.gamma);
        if (!(ratio > 0.25))
            throw_subcritical("mode_log_partition_exact", mode.k, ratio - 0.25);
    }

    const double a = beta * big_n * ch.kappa * k2mu2 / (2.0 * n);
    const double b = beta * std::abs(ch.gamma);
    // Quadratic-order effective Gaussian decay; positive whenever the
    // convergence condition holds.
    const double a_eff = a - big_n * b * b / 4.0;
    const double sigma = 1.0 / std::sqrt(2.0 * a_eff);

    auto log_integrand = [&](double r) {
        return std::log(r) - a * r * r + big_n * numerics::ln_bessel_i0(b * r);
    };

    // Locate the peak of the log-integrand to work in well-scaled exponentials.
    const double span = 50.0 * std::max(1.0, std::sqrt(big_n));
    double peak = log_integrand(sigma);
    for (int i = 0; i < 512; ++i) {
        const double u = 1e-4 * std::pow(span / 1e-4, i / 511.0);
        peak = std::max(peak, log_integrand(sigma * u));
    }

    auto scaled = [&](double u) {
        const double r = sigma * u;
        if (r <= 0.0)
            return 0.0;
        return std::exp(log_integrand(r) - peak);
    };
    const numerics::QuadratureResult radial = numerics::integrate_semi_infinite(scaled, spec);

    const double momentum = std::log(kTwoPi * medium.volume * ch.kappa /
                                     (beta * medium.c * medium.c));
    return momentum + std::log(kTwoPi) + peak + std::log(sigma) + std::log(radial.value);
}

double mode_partition_exact(const ModeIndex& mode, const Medium& medium, double beta,
                            const numerics::QuadratureSpec& spec) {
    return std::exp(mode_log_partition_exact(mode, medium, beta, spec));
}

double mode_log_partition_quadratic(const ModeIndex& mode, const Medium& medium,
                                    double beta) {
    mode.validate();
    const double radicand = quadratic_radicand(mode, medium, beta);
    if (!(radicand > 0.0))
        throw_subcritical("mode_partition_quadratic", mode.k, radicand);
    const double omega = medium.c * std::sqrt(radicand);
    return 2.0 * std::log(kTwoPi / (beta * omega));
}

double mode_partition_quadratic(const ModeIndex& mode, const Medium& medium, double beta) {
    return std::exp(mode_log_partition_quadratic(mode, medium, beta));
}

namespace {

double ideal_gas_log_partition(const Medium& medium, double beta) {
    const double big_n = medium.n_atoms;
    return big_n * std::log(medium.volume) - numerics::ln_factorial(big_n) +
           1.5 * big_n * std::log(kTwoPi * medium.mass / beta);
}

// One field mode's additive ln Z term; throws naming (s, k) when subcritical.
double mode_log_term(std::span<const FieldChannel> channels, const Medium& medium,
                     double beta, std::span<const double> k_grid, std::size_t flat) {
    const std::size_t s = flat / k_grid.size();
    const std::size_t j = flat % k_grid.size();
    const FieldChannel& ch = channels[s];
    const double k = k_grid[j];
    const double radicand = k * k + ch.mu * ch.mu - mass_shift(ch, medium, beta);
    if (!(radicand > 0.0)) {
        std::ostringstream msg;
        msg << "classical partition: subcritical mode (channel " << s + 1 << ", k = " << k
            << ")";
        throw subcritical_error(msg.str());
    }
    return 2.0 * std::log(kTwoPi / (beta * medium.c * std::sqrt(radicand)));
}

// One mode's negative energy correction c^2 n gamma^2/(2 kappa omega^2).
double mode_energy_correction(std::span<const FieldChannel> channels, const Medium& medium,
                              double beta, std::span<const double> k_grid,
                              std::size_t flat) {
    const std::size_t s = flat / k_grid.size();
    const std::size_t j = flat % k_grid.size();
    const FieldChannel& ch = channels[s];
    const double k = k_grid[j];
    const double radicand = k * k + ch.mu * ch.mu - mass_shift(ch, medium, beta);
    if (!(radicand > 0.0)) {
        std::ostringstream msg;
        msg << "classical_energy: subcritical mode (channel " << s + 1 << ", k = " << k
            << ")";
        throw subcritical_error(msg.str());
    }
    const double omega2 = medium.c * medium.c * radicand;
    return medium.c * medium.c * medium.density() * ch.gamma * ch.gamma /
           (2.0 * ch.kappa * omega2);
}

// Fixed-size chunks summed in index order, chunk partials combined in chunk
// order: the serial and parallel paths produce bit-identical results for any
// thread count.
constexpr std::size_t kModeChunk = 4096;

template <typename Term>
double chunk_sum(const Term& term, std::size_t begin, std::size_t end) {
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i)
        sum += term(i);
    return sum;
}

template <bool Parallel, typename Term>
double mode_sum(std::size_t count, const Term& term) {
    const std::size_t chunks = (count + kModeChunk - 1) / kModeChunk;
    std::vector<double> partials(chunks);
    if constexpr (Parallel) {
        std::exception_ptr failure;
#pragma omp parallel for schedule(static)
        for (long long c = 0; c < static_cast<long long>(chunks); ++c) {
            const std::size_t begin = static_cast<std::size_t>(c) * kModeChunk;
            const std::size_t end = std::min(begin + kModeChunk, count);
            try {
                partials[static_cast<std::size_t>(c)] = chunk_sum(term, begin, end);
            } catch (...) {
#pragma omp critical
                if (!failure)
                    failure = std::current_exception();
            }
        }
        if (failure)
            std::rethrow_exception(failure);
    } else {
        for (std::size_t c = 0; c < chunks; ++c) {
            const std::size_t begin = c * kModeChunk;
            const std::size_t end = std::min(begin + kModeChunk, count);
            partials[c] = chunk_sum(term, begin, end);
        }
    }
    double sum = 0.0;
    for (double v : partials)
        sum += v;
    return sum;
}

template <typename Term>
double mode_sum_parallel(std::size_t count, const Term& term) {
    return mode_sum<true>(count, term);
}

template <typename Term>
double mode_sum_serial(std::size_t count, const Term& term) {
    return mode_sum<false>(count, term);
}

} // namespace

double classical_log_partition(std::span<const FieldChannel> channels, const Medium& medium,
                               double beta, std::span<const double> k_grid) {
    medium.validate();
    const std::size_t modes = channels.size() * k_grid.size();
    const double field = modes == 0 ? 0.0
                                    : mode_sum_parallel(modes, [&](std::size_t i) {
                                          return mode_log_term(channels, medium, beta,
                                                               k_grid, i);
                                      });
    return ideal_gas_log_partition(medium, beta) + field;
}

double classical_log_partition_serial(std::span<const FieldChannel> channels,
                                      const Medium& medium, double beta,
                                      std::span<const double> k_grid) {
    medium.validate();
    const std::size_t modes = channels.size() * k_grid.size();
    const double field = modes == 0 ? 0.0
                                    : mode_sum_serial(modes, [&](std::size_t i) {
                                          return mode_log_term(channels, medium, beta,
                                                               k_grid, i);
                                      });
    return ideal_gas_log_partition(medium, beta) + field;
}

double classical_energy(std::span<const FieldChannel> channels, const Medium& medium,
                        double beta, std::span<const double> k_grid) {
    medium.validate();
    const double temperature = 1.0 / beta;
    const std::size_t modes = channels.size() * k_grid.size();
    const double correction = modes == 0 ? 0.0
                                         : mode_sum_parallel(modes, [&](std::size_t i) {
                                               return mode_energy_correction(
                                                   channels, medium, beta, k_grid, i);
                                           });
    return 1.5 * medium.n_atoms * temperature +
           2.0 * static_cast<double>(modes) * temperature - correction;
}

double classical_energy_serial(std::span<const FieldChannel> channels, const Medium& medium,
                               double beta, std::span<const double> k_grid) {
    medium.validate();
    const double temperature = 1.0 / beta;
    const std::size_t modes = channels.size() * k_grid.size();
    const double correction = modes == 0 ? 0.0
                                         : mode_sum_serial(modes, [&](std::size_t i) {
                                               return mode_energy_correction(
                                                   channels, medium, beta, k_grid, i);
                                           });
    return 1.5 * medium.n_atoms * temperature +
           2.0 * static_cast<double>(modes) * temperature - correction;
}

std::vector<double> default_k_grid(const Medium& medium, int count) {
    if (count < 0)
        throw std::invalid_argument("default_k_grid: count must be >= 0");
    const double base = kTwoPi / std::cbrt(medium.volume);
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j)
        grid[static_cast<std::size_t>(j)] = base * static_cast<double>(j + 1);
    return grid;
}

} // namespace auxtherm::classical
