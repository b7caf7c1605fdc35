#include "auxtherm/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include "auxtherm/classical.hpp"
#include "auxtherm/errors.hpp"
#include "auxtherm/oracle.hpp"
#include "auxtherm/quantum.hpp"

namespace auxtherm::cli {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::string resolve_out_dir(const RunConfig& config, const CommandOptions& opts) {
    if (!opts.out_dir.empty())
        return opts.out_dir;
    return config.out_dir;
}

quantum::Prefactor resolve_prefactor(const RunConfig& config, const CommandOptions& opts) {
    const std::string& name = opts.prefactor.empty() ? config.prefactor : opts.prefactor;
    return quantum::prefactor_from_string(name);
}

// All output is staged in memory and lands via rename, so a failed run
// never leaves a partial file behind.
void write_file_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        if (!out)
            throw std::runtime_error("failed to write " + tmp.string());
    }
    fs::rename(tmp, path);
}

template <typename Fn>
void parallel_indexed(std::size_t count, const Fn& fn) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
}

std::vector<double> sorted_tau_grid(const RunConfig& config) {
    std::vector<double> grid =
        expand_grid(config.task.tau_list, config.task.tau_min, config.task.tau_max,
                    config.task.tau_points, config.task.tau_spacing, "tau");
    std::sort(grid.begin(), grid.end());
    return grid;
}

std::vector<double> sorted_t_grid(const RunConfig& config) {
    std::vector<double> grid =
        expand_grid(config.task.t_list, config.task.t_min, config.task.t_max,
                    config.task.t_points, config.task.t_spacing, "t");
    std::sort(grid.begin(), grid.end());
    return grid;
}

} // namespace

void run_poles(const RunConfig& config, const CommandOptions& opts, std::ostream& out) {
    const Medium medium = require_medium(config);
    const std::vector<FieldChannel> channels = build_channels(config);
    const classical::CriticalReport crit = classical::critical_temperature(channels, medium);

    out << "  s            mu         kappa         gamma           T_s         alpha"
           "        T_crit\n";
    std::string csv = "s,mu,kappa,gamma,T_s,alpha,T_crit\n";
    for (std::size_t s = 0; s < channels.size(); ++s) {
        const FieldChannel& ch = channels[s];
        const double t_s = ch.t_char(medium);
        const double alpha = ch.alpha(medium);
        char row[256];
        std::snprintf(row, sizeof(row), "%3zu %13.6g %13.6g %13.6g %13.6g %13.6g %13.6g\n",
                      s + 1, ch.mu, ch.kappa, ch.gamma, t_s, alpha, crit.per_channel[s]);
        out << row;
        csv += std::to_string(s + 1) + ',' + format_double(ch.mu) + ',' +
               format_double(ch.kappa) + ',' + format_double(ch.gamma) + ',' +
               format_double(t_s) + ',' + format_double(alpha) + ',' +
               format_double(crit.per_channel[s]) + '\n';
    }
    out << "global critical temperature (max over channels): " << format_double(crit.global)
        << "\n";

    const std::string dir = resolve_out_dir(config, opts);
    if (!dir.empty()) {
        const fs::path path = fs::path(dir) / "channels.csv";
        write_file_atomic(path, csv);
        out << "wrote " << path.string() << "\n";
    }
}

void run_fcurve(const RunConfig& config, const CommandOptions& opts, std::ostream& out) {
    double alpha = 0.0;
    if (config.task.alpha) {
        alpha = *config.task.alpha;
        if (!(alpha >= 0.0))
            throw config_error("task alpha must be >= 0");
    } else {
        const Medium medium = require_medium(config);
        const std::vector<FieldChannel> channels = build_channels(config);
        if (channels.size() != 1)
            throw config_error(
                "fcurve needs either an explicit task alpha or exactly one channel");
        alpha = channels.front().alpha(medium);
    }

    const std::vector<double> grid = sorted_tau_grid(config);
    std::vector<double> bad;
    for (double tau : grid)
        if (!(tau > alpha))
            bad.push_back(tau);
    if (!bad.empty()) {
        std::ostringstream msg;
        msg << "fcurve: tau grid points at or below alpha = " << alpha << ":";
        for (double tau : bad)
            msg << ' ' << tau;
        throw subcritical_error(msg.str());
    }

    std::vector<double> f(grid.size()), f2(grid.size());
    parallel_indexed(grid.size(), [&](std::size_t i) {
        f[i] = quantum::f_curve(alpha, grid[i], config.quadrature);
        f2[i] = quantum::f2_curve(alpha, grid[i], config.quadrature);
    });

    std::string csv = "tau,f,f2\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        csv += format_double(grid[i]) + ',' + format_double(f[i]) + ',' +
               format_double(f2[i]) + '\n';

    std::string dir = resolve_out_dir(config, opts);
    if (dir.empty())
        dir = ".";
    const fs::path path = fs::path(dir) / "fcurve.csv";
    write_file_atomic(path, csv);
    out << "wrote " << path.string() << " (" << grid.size() << " rows, alpha = "
        << format_double(alpha) << ")\n";
}

void run_heatcap(const RunConfig& config, const CommandOptions& opts, std::ostream& out) {
    const Medium medium = require_medium(config);
    const std::vector<FieldChannel> channels = build_channels(config);
    const quantum::Prefactor prefactor = resolve_prefactor(config, opts);
    const std::vector<double> grid = sorted_t_grid(config);

    // Every (channel, T) pair must sit above the channel threshold before
    // any file is produced.
    std::ostringstream bad;
    bool any_bad = false;
    for (std::size_t s = 0; s < channels.size(); ++s) {
        const double threshold = channels[s].alpha(medium) * channels[s].t_char(medium);
        for (double T : grid) {
            if (!(T > threshold)) {
                bad << " (channel " << s + 1 << ", T = " << T << ")";
                any_bad = true;
            }
        }
    }
    if (any_bad)
        throw subcritical_error("heatcap: grid points at or below per-channel thresholds:" +
                                bad.str());

    const std::size_t rows = grid.size();
    std::vector<std::vector<double>> w(channels.size(), std::vector<double>(rows));
    std::vector<std::vector<double>> cv(channels.size(), std::vector<double>(rows));
    parallel_indexed(channels.size() * rows, [&](std::size_t flat) {
        const std::size_t s = flat / rows;
        const std::size_t i = flat % rows;
        w[s][i] = quantum::field_energy(channels[s], medium, grid[i], config.quadrature,
                                        prefactor);
        cv[s][i] = quantum::heat_capacity_contrib(channels[s], medium, grid[i],
                                                  config.quadrature, prefactor);
    });

    std::string dir = resolve_out_dir(config, opts);
    if (dir.empty())
        dir = ".";

    for (std::size_t s = 0; s < channels.size(); ++s) {
        const double t_s = channels[s].t_char(medium);
        std::string csv = "T,tau,W,Cv\n";
        for (std::size_t i = 0; i < rows; ++i)
            csv += format_double(grid[i]) + ',' + format_double(grid[i] / t_s) + ',' +
                   format_double(w[s][i]) + ',' + format_double(cv[s][i]) + '\n';
        const fs::path path = fs::path(dir) / ("heatcap_s" + std::to_string(s + 1) + ".csv");
        write_file_atomic(path, csv);
        out << "wrote " << path.string() << "\n";
    }

    std::string totals = "T,W,Cv\n";
    for (std::size_t i = 0; i < rows; ++i) {
        double w_sum = 0.0, cv_sum = 0.0;
        for (std::size_t s = 0; s < channels.size(); ++s) {
            w_sum += w[s][i];
            cv_sum += cv[s][i];
        }
        totals += format_double(grid[i]) + ',' + format_double(w_sum) + ',' +
                  format_double(cv_sum) + '\n';
    }
    const fs::path total_path = fs::path(dir) / "heatcap_total.csv";
    write_file_atomic(total_path, totals);
    out << "wrote " << total_path.string() << "\n";
    out << "note: " << quantum::kZeroPointNote << "; W is referenced from it\n";
}

void run_classical_energy(const RunConfig& config, const CommandOptions& opts,
                          std::ostream& out) {
    const Medium medium = require_medium(config);
    const std::vector<FieldChannel> channels = build_channels(config);
    if (!config.task.temperature)
        throw config_error("classical-energy requires a task temperature");
    const double temperature = *config.task.temperature;
    if (!(temperature > 0.0))
        throw config_error("task temperature must be > 0");
    if (!config.task.m_list)
        throw config_error("classical-energy requires a task m_list (mode cutoffs)");

    std::vector<int> cutoffs = *config.task.m_list;
    for (int m : cutoffs)
        if (m < 0)
            throw config_error("m_list entries must be >= 0");
    std::sort(cutoffs.begin(), cutoffs.end());

    const double beta = 1.0 / temperature;
    std::vector<double> energy(cutoffs.size());
    for (std::size_t i = 0; i < cutoffs.size(); ++i) {
        const std::vector<double> k_grid = classical::default_k_grid(medium, cutoffs[i]);
        energy[i] = classical::classical_energy(channels, medium, beta, k_grid);
    }

    std::string csv = "M,E\n";
    for (std::size_t i = 0; i < cutoffs.size(); ++i)
        csv += std::to_string(cutoffs[i]) + ',' + format_double(energy[i]) + '\n';

    std::string dir = resolve_out_dir(config, opts);
    if (dir.empty())
        dir = ".";
    const fs::path path = fs::path(dir) / "classical_energy.csv";
    write_file_atomic(path, csv);
    out << "wrote " << path.string() << " (" << cutoffs.size() << " rows, T = "
        << format_double(temperature) << ")\n";
}

namespace {

struct Check {
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool pass() const { return deviation <= tolerance; }
};

} // namespace

int run_validate(const RunConfig& config, const CommandOptions& opts, std::ostream& out) {
    const double fault = opts.inject_fault == "bessel" ? 1.0 + 1e-6 : 1.0;
    std::vector<Check> checks;

    {
        std::mt19937 rng(12345);
        std::uniform_real_distribution<double> draw(0.0, 50.0);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double x = draw(rng);
            const double impl = numerics::bessel_i0(x) * fault;
            const double ref = oracle::i0_series(x, 64 + static_cast<int>(x));
            worst = std::max(worst, std::abs(impl - ref) / ref);
        }
        checks.push_back({"bessel-vs-series", worst, 1e-12});
    }
    {
        std::mt19937 rng(23456);
        std::uniform_real_distribution<double> draw(0.0, 20.0);
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double x = draw(rng);
            worst = std::max(worst,
                             std::abs(classical::single_mode_y(x) - oracle::y_integral_grid(x)));
        }
        checks.push_back({"weyl-bessel-reduction", worst, 1e-8});
    }
    {
        const auto bose = [](double q) { return q * q * q / std::expm1(q); };
        const double value = numerics::integrate_semi_infinite(bose, config.quadrature).value;
        const double exact = std::pow(std::numbers::pi, 4) / 15.0;
        checks.push_back({"stefan-boltzmann-integral", std::abs(value - exact) / exact, 1e-8});
    }
    {
        const auto gauss = [](double q) { return q * q * std::exp(-q * q); };
        const double value = numerics::integrate_semi_infinite(gauss, config.quadrature).value;
        const double exact = std::sqrt(std::numbers::pi) / 4.0;
        checks.push_back({"gaussian-moment-integral", std::abs(value - exact) / exact, 1e-9});
    }
    {
        Medium medium;
        medium.n_atoms = 5.0;
        medium.volume = 5.0;
        FieldChannel ch{1.0, 1.0, 0.8, 1.0};
        const ModeIndex mode{ch, 1.0};
        const double exact = classical::mode_log_partition_exact(mode, medium, 1.0,
                                                                 config.quadrature);
        const double grid = oracle::mode_log_partition_grid(mode, medium, 1.0);
        checks.push_back(
            {"partition-exact-vs-grid", std::abs(exact - grid) / std::abs(grid), 1e-4});
    }
    {
        const double amplitudes[] = {1.0, 1.0};
        const double wavenumbers[] = {std::sqrt(2.0), std::sqrt(3.0)};
        const double avg = oracle::weyl_ergodic_average(amplitudes, wavenumbers, 1e4);
        const double i0_1 = oracle::i0_series(1.0, 40);
        checks.push_back({"weyl-ergodic-two-freq", std::abs(avg - i0_1 * i0_1), 2e-2});
    }
    {
        const double f = quantum::f_curve(0.1, 100.0, config.quadrature);
        checks.push_back({"fcurve-high-tau-limit", std::abs(f - 1.0), 1e-3});
    }

    int failures = 0;
    for (const Check& check : checks) {
        const bool ok = check.pass();
        if (!ok)
            ++failures;
        char line[160];
        std::snprintf(line, sizeof(line), "%-26s %s  deviation %.3e (tol %.1e)\n",
                      check.name.c_str(), ok ? "PASS" : "FAIL", check.deviation,
                      check.tolerance);
        out << line;
    }
    out << (failures == 0 ? "all checks passed\n"
                          : std::to_string(failures) + " check(s) failed\n");
    return failures;
}

} // namespace auxtherm::cli
