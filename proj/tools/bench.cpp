// Timing comparison of the OpenMP kernels against their serial reference
// implementations. The two paths are required to agree bit for bit; this
// tool reports wall time and speedup for representative workloads.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "auxtherm/classical.hpp"
#include "auxtherm/oracle.hpp"
#include "auxtherm/quantum.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(const char* name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-28s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   %s\n", name,
                serial_s, parallel_s, serial_s / parallel_s,
                identical ? "results identical" : "RESULTS DIFFER");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP, both paths run serially\n\n");
#endif

    using namespace auxtherm;

    {
        FieldChannel ch{1.0, 1.0, 1.0, 1.0};
        Medium medium;
        medium.n_atoms = 100.0;
        medium.volume = 200.0;
        numerics::QuadratureSpec tight;
        tight.rel_tol = 1e-12;
        tight.abs_tol = 1e-14;
        std::vector<double> tau_grid;
        const double alpha = ch.alpha(medium);
        for (int i = 0; i < 512; ++i)
            tau_grid.push_back(alpha + 0.01 + 0.04 * i);

        auto t0 = Clock::now();
        const auto serial = quantum::curve_sweep_serial(ch, medium, tau_grid, tight);
        const double ts = seconds_since(t0);
        t0 = Clock::now();
        const auto parallel = quantum::curve_sweep(ch, medium, tau_grid, tight);
        const double tp = seconds_since(t0);

        bool same = serial.size() == parallel.size();
        for (std::size_t i = 0; same && i < serial.size(); ++i)
            same = serial[i].f == parallel[i].f && serial[i].f2 == parallel[i].f2;
        report("curve_sweep (512 points)", ts, tp, same);
    }

    {
        FieldChannel ch{1.0, 1.0, 0.3, 1.0};
        Medium medium;
        medium.n_atoms = 1000.0;
        medium.volume = 1000.0;
        const double beta = 0.05;
        const std::vector<double> k_grid = classical::default_k_grid(medium, 2'000'000);

        auto t0 = Clock::now();
        const double serial =
            classical::classical_energy_serial({&ch, 1}, medium, beta, k_grid);
        const double ts = seconds_since(t0);
        t0 = Clock::now();
        const double parallel = classical::classical_energy({&ch, 1}, medium, beta, k_grid);
        const double tp = seconds_since(t0);
        report("classical_energy (2M modes)", ts, tp, serial == parallel);
    }

    {
        FieldChannel ch{1.0, 1.0, 0.8, 1.0};
        Medium medium;
        medium.n_atoms = 5.0;
        medium.volume = 5.0;
        const ModeIndex mode{ch, 1.0};
        oracle::GridSpec grid;
        grid.points_per_dim = 2048;

        auto t0 = Clock::now();
        const double serial = oracle::mode_log_partition_grid_serial(mode, medium, 1.0, grid);
        const double ts = seconds_since(t0);
        t0 = Clock::now();
        const double parallel = oracle::mode_log_partition_grid(mode, medium, 1.0, grid);
        const double tp = seconds_since(t0);
        report("mode_partition_grid (2048^2)", ts, tp, serial == parallel);
    }

    {
        const double amplitudes[] = {1.0, 1.0};
        const double wavenumbers[] = {std::sqrt(2.0), std::sqrt(3.0)};

        auto t0 = Clock::now();
        const double serial = oracle::weyl_ergodic_average_serial(amplitudes, wavenumbers, 4e5);
        const double ts = seconds_since(t0);
        t0 = Clock::now();
        const double parallel = oracle::weyl_ergodic_average(amplitudes, wavenumbers, 4e5);
        const double tp = seconds_since(t0);
        report("weyl_ergodic_average (L=4e5)", ts, tp, serial == parallel);
    }

    return 0;
}
