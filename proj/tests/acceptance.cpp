// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line with
// the measured deviation and wall time; the exit code is the failure count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "auxtherm/classical.hpp"
#include "auxtherm/commands.hpp"
#include "auxtherm/config.hpp"
#include "auxtherm/errors.hpp"
#include "auxtherm/numerics.hpp"
#include "auxtherm/oracle.hpp"
#include "auxtherm/quantum.hpp"

using namespace auxtherm;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void criterion(int id, const char* name, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
        ok = false;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > budget_seconds) {
        ok = false;
        detail += detail.empty() ? "" : "; ";
        detail += "over time budget";
    }
    if (!ok)
        ++g_failures;
    std::printf("%s criterion %02d %-28s %6.2f s (budget %g s)  %s\n", ok ? "PASS" : "FAIL",
                id, name, elapsed, budget_seconds, detail.c_str());
    std::fflush(stdout);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Medium unit_medium() {
    Medium medium;
    medium.n_atoms = 1.0;
    medium.volume = 1.0;
    return medium;
}

} // namespace

int main() {
    std::printf("auxtherm acceptance suite\n");

    criterion(1, "weyl-bessel-reduction", 1.0, [](std::string& detail) {
        oracle::GridSpec grid;
        grid.points_per_dim = 64;
        std::mt19937 rng(1);
        std::uniform_real_distribution<double> draw(0.0, 20.0);
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double x = draw(rng);
            worst = std::max(
                worst, std::abs(classical::single_mode_y(x) - oracle::y_integral_grid(x, grid)));
        }
        detail = "max |Y - grid| = " + cli::format_double(worst) + " (tol 1e-8)";
        return worst < 1e-8;
    });

    criterion(2, "stefan-boltzmann-constant", 0.1, [](std::string& detail) {
        const auto bose = [](double q) { return q * q * q / std::expm1(q); };
        const double value = numerics::integrate_semi_infinite(bose).value;
        const double exact = std::pow(std::numbers::pi, 4) / 15.0;
        const double rel = std::abs(value - exact) / exact;
        detail = "rel dev = " + cli::format_double(rel) + " (tol 1e-8)";
        return rel < 1e-8;
    });

    criterion(3, "high-temperature-limit", 1.0, [](std::string& detail) {
        const double f = quantum::f_curve(0.1, 100.0);
        const bool f_ok = f >= 0.999 && f <= 1.001;

        const Medium medium = unit_medium();
        const FieldChannel free_field{1.0, 1.0, 0.0, 1.0}; // T_s = 1, tau = T
        const double ratio = quantum::field_energy(free_field, medium, 100.0) /
                             quantum::field_energy(free_field, medium, 50.0);
        const bool ratio_ok = std::abs(ratio - 16.0) <= 1e-3 * 16.0;
        detail = "f(0.1,100) = " + cli::format_double(f) +
                 ", W(2T)/W(T) = " + cli::format_double(ratio);
        return f_ok && ratio_ok;
    });

    criterion(4, "domain-boundary", 1.0, [](std::string& detail) {
        int rejected = 0, expected = 0;
        bool edges_finite = true;
        for (double alpha : {0.1, 0.5, 1.0}) {
            for (double factor : {0.5, 0.75, 0.9, 1.0}) {
                ++expected;
                try {
                    quantum::f_curve(alpha, alpha * factor);
                } catch (const subcritical_error&) {
                    ++rejected;
                }
            }
            edges_finite = edges_finite && std::isfinite(quantum::f_curve(alpha, alpha * (1.0 + 1e-3)));
        }
        detail = std::to_string(rejected) + "/" + std::to_string(expected) +
                 " subcritical points rejected; tau = alpha(1+1e-3) finite: " +
                 (edges_finite ? "yes" : "no");
        return rejected == expected && edges_finite;
    });

    criterion(5, "heat-capacity-singularity", 5.0, [](std::string& detail) {
        const double near = quantum::f2_curve(0.5, 0.51);
        const double mid = quantum::f2_curve(0.5, 0.6);
        const double far = quantum::f2_curve(0.5, 1.0);
        const double flat = quantum::f2_curve(0.5, 10.0);
        const bool ordered = near > mid && mid > far && far > flat;

        bool growing = true;
        double prev = 0.0;
        for (double delta : {1e-1, 1e-2, 1e-3}) {
            const double f2 = quantum::f2_curve(0.5, 0.5 + delta);
            growing = growing && f2 > prev;
            prev = f2;
        }
        detail = "f2(0.51) = " + cli::format_double(near) + " > f2(0.6) = " +
                 cli::format_double(mid) + " > f2(1) = " + cli::format_double(far) +
                 " > f2(10) = " + cli::format_double(flat);
        return ordered && growing;
    });

    criterion(6, "classical-uv-divergence", 1.0, [](std::string& detail) {
        Medium medium;
        medium.n_atoms = 50.0;
        medium.volume = 10.0;
        const double temperature = 2.0;
        const double beta = 1.0 / temperature;

        const FieldChannel free_field{1.0, 1.0, 0.0, 1.0};
        const double ideal = 1.5 * medium.n_atoms * temperature;
        double worst = 0.0;
        for (int m : {10, 100, 1000}) {
            const auto grid = classical::default_k_grid(medium, m);
            const double e = classical::classical_energy({&free_field, 1}, medium, beta, grid);
            worst = std::max(worst, std::abs(e - ideal - 2.0 * m * temperature) / e);
        }
        const bool exact_ok = worst <= 1e-12;

        const FieldChannel coupled{1.0, 1.0, 0.4, 1.0};
        const auto grid1 = classical::default_k_grid(medium, 100);
        const auto grid2 = classical::default_k_grid(medium, 1000);
        const double e1 = classical::classical_energy({&coupled, 1}, medium, beta, grid1);
        const double e2 = classical::classical_energy({&coupled, 1}, medium, beta, grid2);
        const double slope = (e2 - e1) / 900.0;
        const double omega_first =
            classical::dispersion({coupled, grid2[100]}, medium, beta);
        const double eps_bound = medium.c * medium.c * medium.density() * coupled.gamma *
                                 coupled.gamma /
                                 (2.0 * coupled.kappa * omega_first * omega_first);
        const bool slope_ok = slope <= 2.0 * temperature &&
                              slope >= 2.0 * temperature - eps_bound * 1.0000001;
        detail = "max rel dev (gamma=0) = " + cli::format_double(worst) + ", slope 2T - " +
                 cli::format_double(2.0 * temperature - slope);
        return exact_ok && slope_ok;
    });

    criterion(7, "exact-vs-quadratic-partition", 10.0, [](std::string& detail) {
        Medium medium;
        medium.n_atoms = 5.0;
        medium.volume = 5.0;

        // beta gamma sigma = 0.0474 <= 0.05 at these parameters.
        const FieldChannel weak{1.0, 1.0, 0.15, 1.0};
        const ModeIndex weak_mode{weak, 1.0};
        const double d_quad =
            std::abs(classical::mode_log_partition_exact(weak_mode, medium, 1.0) -
                     classical::mode_log_partition_quadratic(weak_mode, medium, 1.0));
        const bool quad_ok = d_quad <= 1e-3;

        double worst_grid = 0.0;
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> draw(0.0, 1.0);
        for (int trial = 0; trial < 4; ++trial) {
            Medium m2;
            m2.n_atoms = 2.0 + std::floor(draw(rng) * 9.0); // N in [2, 10]
            m2.volume = m2.n_atoms;
            const FieldChannel ch{0.8 + draw(rng), 1.0, 0.3 + 0.5 * draw(rng), 1.0};
            const ModeIndex mode{ch, draw(rng)};
            const double lhs = classical::mode_log_partition_exact(mode, m2, 1.0);
            const double rhs = oracle::mode_log_partition_grid(mode, m2, 1.0);
            worst_grid = std::max(worst_grid, std::abs(lhs - rhs) / std::abs(rhs));
        }
        detail = "|dlnZ| quad = " + cli::format_double(d_quad) +
                 " (tol 1e-3), grid rel = " + cli::format_double(worst_grid) +
                 " (tol 1e-4)";
        return quad_ok && worst_grid <= 1e-4;
    });

    criterion(8, "internal-consistency-identity", 1.0, [](std::string& detail) {
        std::mt19937 rng(8);
        std::uniform_real_distribution<double> draw(0.2, 2.0);
        double worst_factor = 0.0, worst_integrand = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            Medium medium;
            medium.n_atoms = 1.0 + 30.0 * draw(rng);
            medium.volume = 40.0;
            medium.hbar = draw(rng);
            medium.c = draw(rng);
            const FieldChannel ch{draw(rng), draw(rng), 0.4 * draw(rng), 1.0};
            const double alpha = ch.alpha(medium);
            const double t_char = ch.t_char(medium);
            const double T = (alpha + 0.2 + draw(rng)) * t_char;
            const double k = draw(rng);

            const double lhs_f = quantum::energy_correction_factor(ch, medium, 1.0 / T, k);
            const double rhs_f = quantum::w_beta_correction_factor(ch, medium, T, k);
            worst_factor = std::max(worst_factor,
                                    std::abs(lhs_f - rhs_f) / std::max(std::abs(rhs_f), 1e-30));

            const double hbarc = medium.hbar * medium.c;
            const double q = hbarc * k / T;
            const double dos_pref =
                medium.volume * std::pow(T, 4) /
                (2.0 * std::numbers::pi * std::numbers::pi * hbarc * hbarc * hbarc);
            const double lhs_i = quantum::w_beta_integrand(ch, medium, T, k) * T / hbarc;
            const double rhs_i = dos_pref * quantum::int_q_integrand(alpha, T / t_char, q);
            worst_integrand =
                std::max(worst_integrand, std::abs(lhs_i - rhs_i) / std::abs(rhs_i));
        }
        detail = "factor dev = " + cli::format_double(worst_factor) + ", integrand dev = " +
                 cli::format_double(worst_integrand) + " (tol 1e-10)";
        return worst_factor <= 1e-10 && worst_integrand <= 1e-10;
    });

    criterion(9, "weyl-ergodic-average", 5.0, [](std::string& detail) {
        const double x[] = {1.0, 1.0};
        const double k[] = {std::sqrt(2.0), std::sqrt(3.0)};
        const double avg = oracle::weyl_ergodic_average(x, k, 1e4);
        const double i0 = numerics::bessel_i0(1.0);
        const double dev = std::abs(avg - i0 * i0);
        detail = "|avg - I0(1)^2| = " + cli::format_double(dev) + " (tol 2e-2)";
        return dev < 2e-2;
    });

    criterion(10, "critical-temperature-root", 0.1, [](std::string& detail) {
        double worst = 0.0;
        Medium medium;
        medium.n_atoms = 12.0;
        medium.volume = 8.0;
        for (const FieldChannel& ch :
             {FieldChannel{1.0, 1.0, 1.0, 1.0}, FieldChannel{2.5, 0.6, 0.8, 1.0},
              FieldChannel{0.7, 2.0, 1.3, 1.0}}) {
            // k = 0 radicand as a function of T, positive above T_crit.
            const auto radicand = [&](double t) {
                return ch.mu * ch.mu -
                       medium.density() * ch.gamma * ch.gamma / (2.0 * ch.kappa * t);
            };
            const double root = numerics::find_root(radicand, 1e-6, 1e6);
            const double formula = classical::critical_temperature({&ch, 1}, medium).global;
            worst = std::max(worst, std::abs(root - formula) / formula);
        }
        detail = "max rel dev = " + cli::format_double(worst) + " (tol 1e-9)";
        return worst <= 1e-9;
    });

    criterion(11, "figure-regeneration", 10.0, [](std::string& detail) {
        const fs::path base = fs::temp_directory_path() / "auxtherm_acceptance_fig";
        fs::remove_all(base);
        bool all_ok = true;
        std::string note;
        for (double alpha : {1.0, 0.5, 0.1, 0.005}) {
            std::ostringstream cfg;
            cfg << "[task]\nalpha = " << alpha << "\ntau_min = " << 2.0 * alpha
                << "\ntau_max = 20\ntau_points = 40\ntau_spacing = log\n";
            const cli::RunConfig config = cli::parse_config_text(cfg.str());

            const fs::path dir = base / ("alpha_" + std::to_string(alpha));
            std::ostringstream sink;
            cli::run_fcurve(config, {dir.string(), "", ""}, sink);
            const std::string first = read_file(dir / "fcurve.csv");
            cli::run_fcurve(config, {dir.string(), "", ""}, sink);
            const std::string second = read_file(dir / "fcurve.csv");
            if (first != second) {
                all_ok = false;
                note += " nondeterministic at alpha=" + cli::format_double(alpha) + ";";
            }

            std::stringstream rows(first);
            std::string line;
            std::getline(rows, line); // header
            int count = 0;
            while (std::getline(rows, line)) {
                double tau = 0.0, f = 0.0;
                if (std::sscanf(line.c_str(), "%lf,%lf", &tau, &f) == 2) {
                    ++count;
                    if (!std::isfinite(f) || f <= 0.0) {
                        all_ok = false;
                        note += " bad f at alpha=" + cli::format_double(alpha) +
                                " tau=" + cli::format_double(tau) + ";";
                    }
                }
            }
            if (count != 40)
                all_ok = false;
        }
        detail = all_ok ? "4 curves, 40 rows each, byte-identical reruns, all f > 0"
                        : note;
        return all_ok;
    });

    std::printf("%d of 11 criteria passed\n", 11 - g_failures);
    return g_failures;
}
