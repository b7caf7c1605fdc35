#include "auxtherm/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "auxtherm/errors.hpp"

namespace auxtherm::numerics {

namespace {

constexpr long double kPiL = 3.141592653589793238462643383279502884L;

// I0 power series in extended precision with compensated summation. All
// terms are positive, so the sum is stable; the largest intermediate term
// never exceeds the result.
long double i0_series_ld(long double x) {
    const long double q = 0.25L * x * x;
    long double term = 1.0L;
    long double sum = 1.0L;
    long double comp = 0.0L;
    for (int m = 1; m < 4000; ++m) {
        term *= q / (static_cast<long double>(m) * static_cast<long double>(m));
        const long double y = term - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (term < sum * 1e-22L)
            break;
    }
    return sum;
}

// ln of the large-x asymptotic correction series 1 + 1/(8x) + 9/(128x^2) + ...
long double i0_asymptotic_ln_correction(long double x) {
    const long double inv = 1.0L / x;
    long double term = 1.0L;
    long double corr = 0.0L;
    for (int k = 1; k <= 8; ++k) {
        const long double odd = static_cast<long double>(2 * k - 1);
        term *= odd * odd / (8.0L * static_cast<long double>(k)) * inv;
        corr += term;
    }
    return std::log1p(corr);
}

void require_nonnegative(double x, const char* who) {
    if (!(x >= 0.0))
        throw std::domain_error(std::string(who) + ": requires x >= 0");
}

// 15-point Kronrod rule with embedded 7-point Gauss (QUADPACK constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a = 0.0;
    double b = 0.0;
    double integral = 0.0;
    double error = 0.0;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(mid - half * kXgk[i]);
        fv[14 - i] = f(mid + half * kXgk[i]);
    }
    fv[7] = f(mid);

    double kronrod = kWgk[7] * fv[7];
    double gauss = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        kronrod += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1)
            gauss += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }

    Panel p;
    p.a = a;
    p.b = b;
    p.integral = kronrod * half;
    p.error = std::abs((kronrod - gauss) * half);
    return p;
}

struct PanelWorse {
    bool operator()(const Panel& lhs, const Panel& rhs) const {
        return lhs.error < rhs.error;
    }
};

// Find Q_cut such that |f| has dropped below abs_tol and the
// exponential-envelope tail estimate is below abs_tol as well.
double choose_cutoff(const std::function<double(double)>& f, const QuadratureSpec& spec,
                     double& tail_bound, int& evaluations) {
    double qcut = 16.0;
    for (int attempt = 0; attempt < 32; ++attempt) {
        const double f_half = std::abs(f(0.5 * qcut));
        const double f_cut = std::abs(f(qcut));
        evaluations += 2;
        if (f_cut == 0.0 && f_half <= spec.abs_tol) {
            tail_bound = f_half;
            return qcut;
        }
        if (f_cut > 0.0 && f_cut < f_half) {
            const double rate = std::log(f_half / f_cut) / (0.5 * qcut);
            const double tail = f_cut / rate;
            if (f_cut <= spec.abs_tol && tail <= spec.abs_tol) {
                tail_bound = tail;
                return qcut;
            }
        }
        qcut *= 2.0;
    }
    throw convergence_error(
        "integrate_semi_infinite: integrand does not decay below abs_tol by Q = 2^35; "
        "an at-least-exponential tail is required",
        0.0, std::numeric_limits<double>::infinity());
}

} // namespace

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw std::invalid_argument("QuadratureSpec: tolerances must be > 0");
    if (max_subdivisions < 1)
        throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
}

double bessel_i0(double x) {
    require_nonnegative(x, "bessel_i0");
    if (x > 713.0)
        return std::exp(ln_bessel_i0(x)); // overflows to inf where I0 itself does
    return static_cast<double>(i0_series_ld(static_cast<long double>(x)));
}

double ln_bessel_i0(double x) {
    require_nonnegative(x, "ln_bessel_i0");
    const long double xl = static_cast<long double>(x);
    if (x <= 700.0)
        return static_cast<double>(std::log(i0_series_ld(xl)));
    return static_cast<double>(xl - 0.5L * std::log(2.0L * kPiL * xl) +
                               i0_asymptotic_ln_correction(xl));
}

QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         const QuadratureSpec& spec) {
    spec.validate();

    QuadratureResult result;
    double tail_bound = 0.0;
    const double qcut = choose_cutoff(f, spec, tail_bound, result.evaluations);

    // Geometric initial panels resolve integrands peaked near the origin
    // even when the cutoff sits far out.
    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> panels;
    double total = 0.0;
    double err = tail_bound;
    double lo = 0.0;
    for (double hi = 1.0; lo < qcut; hi *= 2.0) {
        hi = std::min(hi, qcut);
        Panel p = gk15(f, lo, hi);
        result.evaluations += 15;
        total += p.integral;
        err += p.error;
        panels.push(p);
        lo = hi;
    }

    int subdivisions = 0;
    while (err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        if (subdivisions >= spec.max_subdivisions)
            throw convergence_error("integrate_semi_infinite: tolerance not reached within " +
                                        std::to_string(spec.max_subdivisions) +
                                        " subdivisions",
                                    total, err);
        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        result.evaluations += 30;
        total += left.integral + right.integral - worst.integral;
        err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++subdivisions;
    }

    result.value = total;
    result.error_bound = err;
    return result;
}

namespace {

double guarded_eval(const std::function<double(double)>& f, double t) {
    try {
        const double v = f(t);
        if (std::isnan(v))
            throw std::domain_error("f returned NaN");
        return v;
    } catch (const std::domain_error&) {
        throw;
    } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "derivative: f undefined at x = " << t << " (" << e.what()
            << "); supply a domain lower bound to switch to one-sided differences";
        throw std::domain_error(msg.str());
    }
}

// Ridders-style polynomial extrapolation. `order_step` is the factor by
// which the leading error power advances per elimination level: con^2 for
// the central stencil (even series), con for the one-sided stencil.
double richardson_table(const std::function<double(double)>& diff, double h0,
                        double order_step) {
    constexpr int kTab = 12;
    constexpr double kShrink = 1.4;
    constexpr double kSafe = 2.0;

    double table[kTab][kTab];
    double h = h0;
    table[0][0] = diff(h);
    double best = table[0][0];
    double best_err = std::numeric_limits<double>::max();

    for (int i = 1; i < kTab; ++i) {
        h /= kShrink;
        table[0][i] = diff(h);
        double fac = order_step;
        for (int j = 1; j <= i; ++j) {
            table[j][i] = (table[j - 1][i] * fac - table[j - 1][i - 1]) / (fac - 1.0);
            fac *= order_step;
            const double errt = std::max(std::abs(table[j][i] - table[j - 1][i]),
                                         std::abs(table[j][i] - table[j - 1][i - 1]));
            if (errt <= best_err) {
                best_err = errt;
                best = table[j][i];
            }
        }
        if (std::abs(table[i][i] - table[i - 1][i - 1]) >= kSafe * best_err &&
            best_err < std::numeric_limits<double>::max())
            break;
    }
    return best;
}

} // namespace

double derivative(const std::function<double(double)>& f, double x, double scale,
                  double lower_bound) {
    if (!(scale > 0.0))
        throw std::invalid_argument("derivative: scale must be > 0");
    if (!(x > lower_bound))
        throw std::domain_error("derivative: x is at or below the domain lower bound");

    const double h0 = scale * 1e-3;
    const bool central_fits = x - 1.0000001 * h0 > lower_bound;

    if (central_fits) {
        auto central = [&](double h) {
            return (guarded_eval(f, x + h) - guarded_eval(f, x - h)) / (2.0 * h);
        };
        return richardson_table(central, h0, 1.4 * 1.4);
    }

    // One-sided: x, x+h, x+2h only, so no stencil point drops below the bound.
    auto forward = [&](double h) {
        return (-3.0 * guarded_eval(f, x) + 4.0 * guarded_eval(f, x + h) -
                guarded_eval(f, x + 2.0 * h)) /
               (2.0 * h);
    };
    return richardson_table(forward, h0, 1.4);
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol, double abs_tol) {
    if (!(lo < hi))
        throw std::invalid_argument("find_root: requires lo < hi");
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0)
        return a;
    if (fb == 0.0)
        return b;
    if (!(fa * fb < 0.0))
        throw bracket_error("find_root: f(lo) and f(hi) do not bracket a root");

    int side = 0;
    double c = 0.5 * (a + b);
    for (int iter = 0; iter < 200; ++iter) {
        c = (a * fb - b * fa) / (fb - fa); // secant through the bracket
        if (!std::isfinite(c) || c <= a || c >= b)
            c = 0.5 * (a + b);
        const double fc = f(c);
        if (fc == 0.0 || std::abs(fc) <= abs_tol)
            return c;
        if ((fa < 0.0) == (fc < 0.0)) {
            a = c;
            fa = fc;
            if (side == -1)
                fb *= 0.5; // Illinois: stop the stale endpoint from pinning
            side = -1;
        } else {
            b = c;
            fb = fc;
            if (side == +1)
                fa *= 0.5;
            side = +1;
        }
        const double scale = std::max({std::abs(a), std::abs(b), 1e-12});
        if (b - a <= rel_tol * scale)
            return 0.5 * (a + b);
    }
    return c;
}

double ln_factorial(double n) {
    if (!(n >= 0.0))
        throw std::invalid_argument("ln_factorial: requires n >= 0");
    if (n <= 20.5) {
        const long long m = std::llround(n);
        double sum = 0.0;
        for (long long k = 2; k <= m; ++k)
            sum += std::log(static_cast<double>(k));
        return sum;
    }
    const double inv = 1.0 / n;
    const double inv2 = inv * inv;
    // Stirling series through 1/(1260 n^5): relative error < 1e-14 for n > 20.
    return n * std::log(n) - n + 0.5 * std::log(2.0 * M_PI * n) +
           inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
}

} // namespace auxtherm::numerics
