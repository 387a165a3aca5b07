#include "zetapair/reference.hpp"
#include "zetapair/errors.hpp"
#include "zetapair/riemann_siegel.hpp"

#include <algorithm>
#include <cmath>

namespace zetapair::ref {

namespace {

std::vector<double> points_leq(const ZeroSet& zs, double T) {
    if (T > zs.t_max() + 1e-9) throw RangeBeyondCertified(T, zs.t_max());
    std::vector<double> g;
    for (double v : zs.ordinates())
        if (v <= T) g.push_back(v);
    return g;
}

std::vector<double> measured_restricted(const ZeroSet& zs, double T) {
    const double lnT = std::log(T);
    const double lo = T / (lnT * lnT);
    std::vector<double> x;
    for (double v : zs.ordinates()) {
        if (v > lo && v <= T)
            x.push_back(zs.scaling() == Scaling::raw ? detail::nbar(v) : v);
    }
    return x;
}

} // namespace

long pair_count(const ZeroSet& zs, double T, double lambda) {
    const auto g = points_leq(zs, T);
    const double L = zs.rescale_factor_at(T);
    long count = 0;
    for (double a : g)
        for (double b : g) {
            const double d = (a - b) * L;
            if (d > 0 && d <= lambda) ++count;
        }
    return count;
}

double d_statistic(const ZeroSet& zs, double T, double lambda) {
    const auto g = points_leq(zs, T);
    const double L = zs.rescale_factor_at(T);
    long double acc = 0.0L;
    for (double a : g)
        for (double b : g) {
            if (std::fabs(a - b) * L <= lambda)
                acc += lambda / L - std::fabs(a - b);
        }
    return static_cast<double>(acc);
}

std::vector<long> bin_counts(const ZeroSet& zs, double T, double M) {
    const auto x = measured_restricted(zs, T);
    const long kmax = static_cast<long>(std::floor(2 * M + 1e-9));
    std::vector<long> counts(kmax + 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double d = x[j] - x[i];
            if (std::fabs(d) > M) continue;
            // bin k with k/2 - 1/4 < d <= k/2 + 1/4, folded to |k|
            const long k = static_cast<long>(std::ceil(2 * d - 0.5));
            const long kf = std::labs(k);
            if (kf <= kmax) ++counts[kf];
        }
    return counts;
}

MultiplicityCounts multiplicity_counts(const ZeroSet& zs, double T) {
    const auto g = points_leq(zs, T);
    MultiplicityCounts mc;
    std::size_t i = 0;
    while (i < g.size()) {
        std::size_t j = i + 1;
        while (j < g.size() && g[j] - g[j - 1] <= zs.tol()) ++j;
        const long m = static_cast<long>(j - i);
        mc.n += m;
        mc.n_star += m * m;
        mc.n_circledast += m * m;
        if (m == 1) ++mc.n_simple;
        i = j;
    }
    mc.n_critical = mc.n;
    return mc;
}

long gm_pair_count(const ZeroSet& zs, double T, double h) {
    const auto g = points_leq(zs, T);
    const double L = zs.rescale_factor_at(T);
    long count = 0;
    for (double a : g)
        for (double b : g)
            if (std::fabs(a - b) * L <= h) ++count;
    return count;
}

double windowed_count_variance_sampled(const ZeroSet& zs, double T,
                                       double lambda, double dt) {
    const double L = zs.rescale_factor_at(T);
    const double delta = lambda / L;
    const auto ords = zs.ordinates();
    long double acc = 0.0L;
    const long steps = static_cast<long>(T / dt);
    for (long i = 0; i < steps; ++i) {
        const double t = (i + 0.5) * dt;
        const long g = (std::upper_bound(ords.begin(), ords.end(), t + delta) -
                        ords.begin()) -
                       (std::upper_bound(ords.begin(), ords.end(), t) -
                        ords.begin());
        acc += static_cast<long double>(g) * g * dt;
    }
    // remainder piece
    const double t0 = steps * dt;
    if (T > t0) {
        const double t = 0.5 * (t0 + T);
        const long g = (std::upper_bound(ords.begin(), ords.end(), t + delta) -
                        ords.begin()) -
                       (std::upper_bound(ords.begin(), ords.end(), t) -
                        ords.begin());
        acc += static_cast<long double>(g) * g * (T - t0);
    }
    return static_cast<double>(acc);
}

std::vector<double> find_zeros_grid(double t_lo, double t_hi, double tol,
                                    double step_scale) {
    std::vector<double> zeros;
    double t = t_lo;
    double f_prev = detail::z_eval(t);
    while (t < t_hi) {
        const double density = detail::theta_derivative(std::max(t, 16.0)) / 3.14159265358979;
        const double step = std::min(0.5, step_scale / std::max(density, 0.05));
        const double t_next = std::min(t + step, t_hi + step);
        const double f_next = detail::z_eval(t_next);
        if ((f_prev < 0) != (f_next < 0)) {
            double a = t, b = t_next, fa = f_prev;
            while (b - a > tol) {
                const double m = 0.5 * (a + b);
                const double fm = detail::z_eval(m);
                if ((fa < 0) != (fm < 0)) b = m;
                else { a = m; fa = fm; }
            }
            const double gamma = 0.5 * (a + b);
            if (gamma > t_lo && gamma <= t_hi) zeros.push_back(gamma);
        }
        t = t_next;
        f_prev = f_next;
    }
    return zeros;
}

} // namespace zetapair::ref
