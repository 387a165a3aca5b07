#ifndef ZETAPAIR_ZERO_ENGINE_HPP
#define ZETAPAIR_ZERO_ENGINE_HPP

#include <vector>

namespace zetapair {

struct Ordinate {
    double gamma;      // imaginary part of the zero
    double precision;  // certified absolute error bound, <= requested tol
};

// All zero ordinates in (t_lo, t_hi], as sign changes of Z refined to tol.
// The scan walks Gram blocks from the absolute anchor g_{-1} (N = 0 there),
// reconciling each block's sign-change count with its Gram length before
// accepting it; irreconcilable blocks throw UnresolvedBlock.
// Requires 10 <= t_lo < t_hi and tol >= 1e-9.
std::vector<Ordinate> find_zeros(double t_lo, double t_hi, double tol);

// N(T): multiplicity-weighted count of zeros with 0 < gamma <= T, from the
// same certified block scan.  T >= 0.
long count_zeros(double T);

// S(t) = N(t) - theta(t)/pi - 1.  Requires t >= 10; at an ordinate the
// right-limit N(t+) applies.
double s_function(double t);

namespace detail {

// Fraction of Gram intervals in (g_0, g_n_max] containing exactly one zero;
// diagnostic for Gram's law.
double gram_law_fraction(long n_max);

} // namespace detail

} // namespace zetapair

#endif
