// Test-only fixed-order Gauss-Legendre quadrature on a mapped semi-infinite
// interval. Kept independent of the numerics module: its only overlap with
// the code under test is elementary arithmetic.
#ifndef AUXTHERM_TESTS_GL_ORACLE_HPP
#define AUXTHERM_TESTS_GL_ORACLE_HPP

#include <cmath>
#include <numbers>
#include <vector>

namespace gl_oracle {

inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double z1 = 0.0, pp = 0.0;
        do {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            z1 = z;
            z = z1 - p1 / pp;
        } while (std::abs(z - z1) > 1e-15);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

// integral_0^inf g(Q) dQ with the rational map Q = t/(1-t), t in [0,1].
template <typename G>
double integrate_semi_infinite(const G& g, int n = 200) {
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = 0.5 * (x[i] + 1.0);
        const double q = t / (1.0 - t);
        const double jac = 1.0 / ((1.0 - t) * (1.0 - t));
        sum += 0.5 * w[i] * g(q) * jac;
    }
    return sum;
}

} // namespace gl_oracle

#endif
