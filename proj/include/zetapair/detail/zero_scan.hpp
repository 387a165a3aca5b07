#ifndef ZETAPAIR_DETAIL_ZERO_SCAN_HPP
#define ZETAPAIR_DETAIL_ZERO_SCAN_HPP

#include "zetapair/errors.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace zetapair::detail {

// Sign-change bracket [lo, hi] with f(lo) f(hi) < 0.
struct Bracket {
    double lo, hi;
    double f_lo, f_hi;
};

// Count sign changes of f over [a, b] sampled at `steps` uniform
// subintervals, collecting brackets.
template <class F>
long sample_sign_changes(F&& f, double a, double b, long steps,
                         std::vector<Bracket>* out) {
    long changes = 0;
    double prev_t = a;
    double prev_f = f(a);
    for (long i = 1; i <= steps; ++i) {
        const double t = a + (b - a) * static_cast<double>(i) / steps;
        const double ft = f(t);
        if ((prev_f < 0 && ft > 0) || (prev_f > 0 && ft < 0)) {
            ++changes;
            if (out) out->push_back({prev_t, t, prev_f, ft});
        } else if (ft == 0.0 && i < steps) {
            // sample landed exactly on a zero; treat as a change against the
            // next sample by nudging
            const double t2 = std::nextafter(t, b);
            const double f2 = f(t2);
            if ((prev_f < 0) != (f2 < 0)) {
                ++changes;
                if (out) out->push_back({prev_t, t2, prev_f, f2});
            }
            prev_t = t2;
            prev_f = f2;
            continue;
        }
        prev_t = t;
        prev_f = ft;
    }
    return changes;
}

// Resolve one Gram block [a, b] expected to contain `expected` zeros.
// Subdivides each of the `intervals` Gram intervals progressively until the
// sign-change count matches; throws UnresolvedBlock past max_depth halvings.
template <class F>
std::vector<Bracket> resolve_block(F&& f, double a, double b, long intervals,
                                   long expected, int max_depth = 20) {
    std::vector<Bracket> brackets;
    long found = -1;
    for (int depth = 0; depth <= max_depth; ++depth) {
        brackets.clear();
        const long steps = intervals << depth;
        found = sample_sign_changes(f, a, b, steps, &brackets);
        if (found == expected) return brackets;
        if (found > expected) break;  // more zeros than the Gram count allows
    }
    throw UnresolvedBlock(a, b, expected, found);
}

// Refine a bracket to width <= tol: bisection to 1e-4, then false-position
// with a bisection safeguard.  Returns {gamma, precision} where gamma is the
// best evaluated point and [gamma - precision, gamma + precision] contains
// the final sign-change bracket.
template <class F>
std::pair<double, double> refine_bracket(F&& f, Bracket br, double tol) {
    double a = br.lo, b = br.hi, fa = br.f_lo, fb = br.f_hi;
    while (b - a > 1e-4) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) { a = std::nextafter(m, a); b = std::nextafter(m, b);
                         fa = f(a); fb = f(b); break; }
        if ((fa < 0) != (fm < 0)) { b = m; fb = fm; } else { a = m; fa = fm; }
    }
    int stall = 0;
    while (b - a > tol) {
        double x = b - fb * (b - a) / (fb - fa);
        const double m = 0.5 * (a + b);
        // fall back to bisection when false position stops contracting
        if (!(x > a && x < b) || ++stall % 3 == 0) x = m;
        const double fx = f(x);
        if (fx == 0.0) { a = std::nextafter(x, a); b = std::nextafter(x, b);
                         fa = f(a); fb = f(b); break; }
        if ((fa < 0) != (fx < 0)) { b = x; fb = fx; } else { a = x; fa = fx; }
    }
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    double gamma = m;
    double best = std::fabs(fm);
    if (std::fabs(fa) < best) { gamma = a; best = std::fabs(fa); }
    if (std::fabs(fb) < best) { gamma = b; }
    // never certify below 1e-9: the evaluation noise of f sets that floor
    const double precision = std::max(std::max(gamma - a, b - gamma), 1e-9);
    return {gamma, precision};
}

} // namespace zetapair::detail

#endif
