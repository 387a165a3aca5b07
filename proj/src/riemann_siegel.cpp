#include "zetapair/riemann_siegel.hpp"
#include "zetapair/errors.hpp"

#include <cmath>
#include <complex>
#include <mutex>
#include <vector>

namespace zetapair {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi    = 3.141592653589793238462643383280;

// Riemann-Siegel correction functions C0..C3 as polynomials in the
// fractional part p = sqrt(t/2pi) - floor(sqrt(t/2pi)).
#include "rs_coeffs.inc"

double poly_eval(const double* c, int n, double x) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc = acc * x + c[i];
    return acc;
}

// Shared tables of log n and 1/sqrt(n) for the main sums.  Sized to cover
// the Riemann-Siegel sum up to t = 1e7 (N = 1261) and the Euler-Maclaurin
// sum up to the crossover height (N ~ 1320).
constexpr int kTableSize = 2048;
double g_logn[kTableSize];
double g_invsqrt[kTableSize];
std::once_flag g_table_once;

void init_tables() {
    for (int n = 1; n < kTableSize; ++n) {
        g_logn[n] = std::log(static_cast<double>(n));
        g_invsqrt[n] = 1.0 / std::sqrt(static_cast<double>(n));
    }
}

// Euler-Maclaurin zeta(1/2 + it).  Truncation N ~ 1.3 t keeps the Bernoulli
// tail far below double rounding; K = 12 correction terms.
constexpr double kEmCrossover = 1000.0;

constexpr double kBernoulli[12] = {
    1.0 / 6,      -1.0 / 30,      1.0 / 42,      -1.0 / 30,
    5.0 / 66,     -691.0 / 2730,  7.0 / 6,       -3617.0 / 510,
    43867.0 / 798, -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730,
};

std::complex<double> zeta_euler_maclaurin(double t) {
    std::call_once(g_table_once, init_tables);
    const std::complex<double> s(0.5, t);
    const int N = static_cast<int>(1.3 * t) + 16;
    std::complex<double> total(0.0, 0.0);
    for (int n = 1; n < N; ++n) {
        const double ln = (n < kTableSize) ? g_logn[n] : std::log(double(n));
        const double is = (n < kTableSize) ? g_invsqrt[n] : 1.0 / std::sqrt(double(n));
        // n^{-s} = n^{-1/2} e^{-i t ln n}
        total += std::complex<double>(is * std::cos(t * ln), -is * std::sin(t * ln));
    }
    const double lnN = std::log(static_cast<double>(N));
    const std::complex<double> Ns = std::exp(-s * lnN);  // N^{-s}
    total += 0.5 * Ns;
    total += Ns * static_cast<double>(N) / (s - 1.0);    // N^{1-s}/(s-1)
    // correction terms B_{2k}/(2k)! (s)(s+1)...(s+2k-2) N^{-s-2k+1}
    std::complex<double> rising = s;
    double fact = 2.0;                                   // (2k)!
    std::complex<double> npow = Ns * (1.0 / N);          // N^{-s-1}
    const double invN2 = 1.0 / (static_cast<double>(N) * N);
    for (int k = 1; k <= 12; ++k) {
        if (k > 1) {
            rising *= (s + double(2 * k - 3)) * (s + double(2 * k - 2));
            fact *= (2 * k) * (2 * k - 1);
            npow *= invN2;
        }
        total += (kBernoulli[k - 1] / fact) * rising * npow;
    }
    return total;
}

double theta_series_raw(double t) {
    const double u = t * 0.5;
    const double t2 = t * t;
    return u * std::log(t / kTwoPi) - u - kPi / 8 +
           1.0 / (48 * t) + 7.0 / (5760 * t * t2) + 31.0 / (80640 * t2 * t2 * t);
}

double z_riemann_siegel(double t) {
    std::call_once(g_table_once, init_tables);
    const double tau = std::sqrt(t / kTwoPi);
    const int N = static_cast<int>(tau);
    const double p = tau - N;
    const double th = theta_series_raw(t);
    double sum = 0.0;
    for (int n = 1; n <= N; ++n) {
        const double ln = (n < kTableSize) ? g_logn[n] : std::log(double(n));
        const double is = (n < kTableSize) ? g_invsqrt[n] : 1.0 / std::sqrt(double(n));
        sum += is * std::cos(th - t * ln);
    }
    sum *= 2.0;
    const double r = std::sqrt(kTwoPi / t);   // (2pi/t)^{1/2}
    const double r4 = std::sqrt(r);           // (2pi/t)^{1/4}
    double corr = poly_eval(kRsC0, 28, p);
    corr += poly_eval(kRsC1, 30, p) * r;
    corr += poly_eval(kRsC2, 32, p) * r * r;
    corr += poly_eval(kRsC3, 34, p) * r * r * r;
    const double sign = (N % 2 == 0) ? -1.0 : 1.0;  // (-1)^{N-1}
    return sum + sign * r4 * corr;
}

} // namespace

namespace detail {

double theta_series(double t) { return theta_series_raw(t); }

double theta_derivative(double t) { return 0.5 * std::log(t / kTwoPi); }

double theta_extended(double t) {
    if (t >= 10.0) return theta_series_raw(t);
    const double main = (t > 0.0) ? t * 0.5 * std::log(t / kTwoPi) - t * 0.5 : 0.0;
    return main - kPi / 8;
}

double z_eval(double t) {
    if (t < kEmCrossover) {
        const std::complex<double> z = zeta_euler_maclaurin(t);
        const double th = theta_series_raw(t);
        // Z = Re(e^{i theta} zeta); the imaginary part vanishes analytically
        return std::cos(th) * z.real() - std::sin(th) * z.imag();
    }
    return z_riemann_siegel(t);
}

double nbar(double t) { return theta_series_raw(t) / kPi + 1.0; }

double nbar_inverse(double x, double t_guess) {
    double t = t_guess > 10.0 ? t_guess : 20.0;
    for (int it = 0; it < 60; ++it) {
        const double f = nbar(t) - x;
        const double d = theta_derivative(t) / kPi;
        double step = f / d;
        if (step > t * 0.5) step = t * 0.5;      // keep iterate positive
        if (step < -t) step = -t;
        t -= step;
        if (t < 8.0) t = 8.0;
        if (std::fabs(step) < 1e-12 * (1.0 + t)) break;
    }
    return t;
}

} // namespace detail

double riemann_siegel_theta(double t) {
    if (t < 10.0) throw DomainTooSmall(t);
    return theta_series_raw(t);
}

double hardy_z(double t) {
    if (t < 10.0) throw DomainTooSmall(t);
    return detail::z_eval(t);
}

GramPoint gram_point(long n) {
    if (n < -1) throw InvalidSpec("gram_point requires n >= -1");
    const double target = n * kPi;
    // Initial guess from the main term theta ~ (t/2) log(t/2pi e) - pi/8:
    // with t = 2pi u this is pi u (log u - 1) - pi/8 = n pi.
    const double c = n + 0.125;
    double u = 3.0;
    if (c > 1.0) {
        u = c / std::log(c + 2.0) + 1.0;
        for (int i = 0; i < 40; ++i) {
            const double lu = std::log(u);
            const double f = u * (lu - 1.0) - c;
            u -= f / lu;
            if (u < 1.5) u = 1.5;
        }
    }
    double t = std::max(9.0, kTwoPi * u);
    for (int i = 0; i < 60; ++i) {
        const double f = detail::theta_series(t) - target;
        const double step = f / detail::theta_derivative(t);
        t -= step;
        if (t < 8.0) t = 8.0;
        if (std::fabs(step) < 1e-12) break;
    }
    // polish with one bisection-guarded sweep if Newton left residual
    if (std::fabs(detail::theta_series(t) - target) > 1e-9) {
        double lo = t, hi = t;
        while (detail::theta_series(lo) > target) lo -= 0.5;
        while (detail::theta_series(hi) < target) hi += 0.5;
        for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
            const double mid = 0.5 * (lo + hi);
            (detail::theta_series(mid) < target ? lo : hi) = mid;
        }
        t = 0.5 * (lo + hi);
    }
    return GramPoint{n, t};
}

} // namespace zetapair
