#ifndef ZETAPAIR_RIEMANN_SIEGEL_HPP
#define ZETAPAIR_RIEMANN_SIEGEL_HPP

namespace zetapair {

// Riemann-Siegel phase theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi,
// evaluated by its asymptotic series.  Absolute error <= 1e-10 for t >= 10.
// Throws DomainTooSmall for t < 10.
double riemann_siegel_theta(double t);

// Hardy Z function, Z(t) = e^{i theta(t)} zeta(1/2 + it), real-valued.
// Euler-Maclaurin evaluation below t = 1000, Riemann-Siegel main sum plus
// three correction terms above.  Absolute error <= 1e-8 for 10 <= t <= 1e7.
// Throws DomainTooSmall for t < 10.
double hardy_z(double t);

struct GramPoint {
    long index;     // n >= -1
    double t;       // theta(t) = n pi, |theta(t) - n pi| <= 1e-9
};

// n-th Gram point, n >= -1.  theta is monotone on the relevant range, so the
// root is found by Newton with a bracketed fallback.
GramPoint gram_point(long n);

namespace detail {

// Internal evaluators without the public t >= 10 precondition.  The theta
// series is already good to ~3e-11 at t = 8, which covers the Gram point
// g_{-1} ~ 9.667 needed by the zero scan.
double theta_series(double t);        // valid t >= 8
double theta_derivative(double t);    // (1/2) log(t / 2pi)
double z_eval(double t);              // valid t >= 8

// theta extended below t = 10 by the smooth main terms
// (t/2) log(t/2pi) - t/2 - pi/8 with the t log t limit 0 at t = 0.  Used by
// the windowed S-variance integral, which integrates from t = 0; the series
// correction terms are dropped there because 1/(48t) diverges at 0.
double theta_extended(double t);

// Mean zero-counting function N_bar(t) = theta(t)/pi + 1 (Riemann-von
// Mangoldt main term) and its inverse.  Used for unfolding and for the
// mapped synthetic mode.
double nbar(double t);
double nbar_inverse(double x, double t_guess);

} // namespace detail

} // namespace zetapair

#endif
