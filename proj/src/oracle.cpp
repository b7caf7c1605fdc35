#include "auxtherm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "auxtherm/errors.hpp"

namespace auxtherm::oracle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// The oracles deliberately avoid the numerics module: their only shared
// ground with the implementation under test is elementary arithmetic.
double ln_i0_oracle(double x) {
    const int terms = 64 + static_cast<int>(x);
    const double value = i0_series(x, terms);
    if (!std::isfinite(value))
        throw std::invalid_argument(
            "oracle: coupling too strong for the desk-scale series (I0 overflows)");
    return std::log(value);
}

struct Kahan {
    long double sum = 0.0L;
    long double comp = 0.0L;
    void add(long double v) {
        const long double y = v - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

} // namespace

void GridSpec::validate() const {
    if (points_per_dim < 16)
        throw std::invalid_argument("GridSpec: points_per_dim must be >= 16");
    if (!(extent >= 5.0))
        throw std::invalid_argument("GridSpec: extent must be >= 5");
}

double y_integral_grid(double x, const GridSpec& grid) {
    grid.validate();
    if (!(x >= 0.0))
        throw std::domain_error("y_integral_grid: requires x >= 0");

    // Periodic integrand: the n-point trapezoid rule is the plain node mean
    // and converges spectrally. Extended precision keeps the large-x mean
    // correct to the last double bit.
    const long long n = static_cast<long long>(grid.points_per_dim) *
                        static_cast<long long>(grid.points_per_dim);
    const long double xl = static_cast<long double>(x);
    Kahan acc;
    for (long long i = 0; i < n; ++i) {
        const long double z = static_cast<long double>(i) / static_cast<long double>(n);
        acc.add(std::exp(-xl * std::cos(2.0L * static_cast<long double>(std::numbers::pi_v<long double>) * z)));
    }
    return static_cast<double>(acc.sum / static_cast<long double>(n));
}

namespace {

struct GridSetup {
    double momentum_log = 0.0; // ln of the analytic (p, p') Gaussian factor
    double a1 = 0.0;           // per-variable quadratic coefficient
    double b = 0.0;            // beta * |gamma|
    double big_n = 0.0;
    double box = 0.0;  // half-width of the (psi, chi) box
    double step = 0.0; // grid step
};

GridSetup prepare_grid(const ModeIndex& mode, const Medium& medium, double beta,
                       const GridSpec& grid) {
    grid.validate();
    mode.validate();
    medium.validate();
    if (!(beta > 0.0))
        throw std::domain_error("mode_partition_grid: requires beta > 0");
    if (medium.n_atoms > 10.5)
        throw std::invalid_argument(
            "mode_partition_grid: desk-scale oracle, use N <= 10 atoms");

    const FieldChannel& ch = mode.channel;
    const double n = medium.density();
    const double k2mu2 = mode.k * mode.k + ch.mu * ch.mu;

    if (ch.gamma != 0.0) {
        const double ratio = ch.kappa * k2mu2 / (2.0 * n * beta * ch.gamma * ch.gamma);
        if (!(ratio > 0.25))
            throw subcritical_error(
                "mode_partition_grid: convergence condition kappa(k^2+mu^2)/(2 n beta gamma^2) > 1/4 violated");
    }

    GridSetup setup;
    setup.big_n = medium.n_atoms;
    setup.a1 = beta * medium.n_atoms * ch.kappa * k2mu2 / (2.0 * n);
    setup.b = beta * std::abs(ch.gamma);
    const double a_eff = setup.a1 - medium.n_atoms * setup.b * setup.b / 4.0;
    const double sigma = 1.0 / std::sqrt(2.0 * a_eff);
    setup.box = grid.extent * sigma;
    setup.step = 2.0 * setup.box / static_cast<double>(grid.points_per_dim);
    setup.momentum_log =
        std::log(kTwoPi * medium.volume * ch.kappa / (beta * medium.c * medium.c));
    return setup;
}

double log_weight(const GridSetup& s, double psi, double chi) {
    const double r2 = psi * psi + chi * chi;
    return -s.a1 * r2 + s.big_n * ln_i0_oracle(s.b * std::sqrt(r2));
}

double node(const GridSetup& s, int i) {
    return -s.box + (static_cast<double>(i) + 0.5) * s.step;
}

double row_max(const GridSetup& s, int i, int p) {
    const double psi = node(s, i);
    double m = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < p; ++j)
        m = std::max(m, log_weight(s, psi, node(s, j)));
    return m;
}

double row_sum(const GridSetup& s, int i, int p, double shift) {
    const double psi = node(s, i);
    double sum = 0.0;
    for (int j = 0; j < p; ++j)
        sum += std::exp(log_weight(s, psi, node(s, j)) - shift);
    return sum;
}

template <bool Parallel>
double grid_log_partition(const ModeIndex& mode, const Medium& medium, double beta,
                          const GridSpec& grid) {
    const GridSetup setup = prepare_grid(mode, medium, beta, grid);
    const int p = grid.points_per_dim;

    std::vector<double> maxima(static_cast<std::size_t>(p));
    std::vector<double> sums(static_cast<std::size_t>(p));

    if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < p; ++i)
            maxima[static_cast<std::size_t>(i)] = row_max(setup, i, p);
    } else {
        for (int i = 0; i < p; ++i)
            maxima[static_cast<std::size_t>(i)] = row_max(setup, i, p);
    }
    double shift = maxima[0];
    for (double m : maxima)
        shift = std::max(shift, m);

    if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < p; ++i)
            sums[static_cast<std::size_t>(i)] = row_sum(setup, i, p, shift);
    } else {
        for (int i = 0; i < p; ++i)
            sums[static_cast<std::size_t>(i)] = row_sum(setup, i, p, shift);
    }
    double total = 0.0;
    for (double s : sums)
        total += s;

    return setup.momentum_log + shift + std::log(total * setup.step * setup.step);
}

} // namespace

double mode_log_partition_grid(const ModeIndex& mode, const Medium& medium, double beta,
                               const GridSpec& grid) {
    return grid_log_partition<true>(mode, medium, beta, grid);
}

double mode_log_partition_grid_serial(const ModeIndex& mode, const Medium& medium,
                                      double beta, const GridSpec& grid) {
    return grid_log_partition<false>(mode, medium, beta, grid);
}

double mode_partition_grid(const ModeIndex& mode, const Medium& medium, double beta,
                           const GridSpec& grid) {
    return std::exp(mode_log_partition_grid(mode, medium, beta, grid));
}

namespace {

// Composite Simpson over fixed deterministic chunks; the same chunk sums are
// produced by the serial and parallel paths.
constexpr long long kWeylChunk = 1 << 13;

double weyl_chunk_sum(std::span<const double> amplitudes,
                      std::span<const double> wavenumbers, double h, long long n,
                      long long begin, long long end) {
    double sum = 0.0;
    for (long long i = begin; i < end; ++i) {
        const double t = h * static_cast<double>(i);
        double expo = 0.0;
        for (std::size_t j = 0; j < amplitudes.size(); ++j)
            expo += amplitudes[j] * std::cos(wavenumbers[j] * t);
        const double coef = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        sum += coef * std::exp(-expo);
    }
    return sum;
}

template <bool Parallel>
double weyl_average(std::span<const double> amplitudes, std::span<const double> wavenumbers,
                    double length) {
    if (amplitudes.size() != wavenumbers.size())
        throw std::invalid_argument("weyl_ergodic_average: amplitude/wavenumber size mismatch");
    if (amplitudes.empty() || amplitudes.size() > 4)
        throw std::invalid_argument("weyl_ergodic_average: 1 to 4 frequency components supported");
    if (!(length > 0.0))
        throw std::domain_error("weyl_ergodic_average: requires length > 0");

    double k_max = 0.0;
    for (double k : wavenumbers)
        k_max = std::max(k_max, std::abs(k));

    long long n = std::max<long long>(1 << 20,
                                      static_cast<long long>(length * k_max * 16.0 / kTwoPi));
    if (n % 2 == 1)
        ++n;
    const double h = length / static_cast<double>(n);

    const long long chunks = (n + 1 + kWeylChunk - 1) / kWeylChunk;
    std::vector<double> partials(static_cast<std::size_t>(chunks));

    if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
        for (long long c = 0; c < chunks; ++c) {
            const long long begin = c * kWeylChunk;
            const long long end = std::min<long long>(begin + kWeylChunk, n + 1);
            partials[static_cast<std::size_t>(c)] =
                weyl_chunk_sum(amplitudes, wavenumbers, h, n, begin, end);
        }
    } else {
        for (long long c = 0; c < chunks; ++c) {
            const long long begin = c * kWeylChunk;
            const long long end = std::min<long long>(begin + kWeylChunk, n + 1);
            partials[static_cast<std::size_t>(c)] =
                weyl_chunk_sum(amplitudes, wavenumbers, h, n, begin, end);
        }
    }

    double total = 0.0;
    for (double s : partials)
        total += s;
    return total * h / 3.0 / length;
}

} // namespace

double weyl_ergodic_average(std::span<const double> amplitudes,
                            std::span<const double> wavenumbers, double length) {
    return weyl_average<true>(amplitudes, wavenumbers, length);
}

double weyl_ergodic_average_serial(std::span<const double> amplitudes,
                                   std::span<const double> wavenumbers, double length) {
    return weyl_average<false>(amplitudes, wavenumbers, length);
}

double i0_series(double x, int terms) {
    if (!(x >= 0.0))
        throw std::domain_error("i0_series: requires x >= 0");
    if (terms < 1)
        throw std::invalid_argument("i0_series: requires terms >= 1");

    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    double comp = 0.0;
    for (int m = 1; m < terms; ++m) {
        term *= q / (static_cast<double>(m) * static_cast<double>(m));
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

} // namespace auxtherm::oracle
