#include "zetapair/pair_stats.hpp"
#include "zetapair/errors.hpp"
#include "zetapair/riemann_siegel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zetapair {

namespace {

constexpr double kPi = 3.141592653589793238462643383280;

struct Kahan {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

std::span<const double> points_leq(const ZeroSet& zs, double T) {
    const auto ords = zs.ordinates();
    const auto hi = std::upper_bound(ords.begin(), ords.end(), T);
    return ords.subspan(0, hi - ords.begin());
}

void check_height(const ZeroSet& zs, double T) {
    if (T > zs.t_max() + 1e-9) throw RangeBeyondCertified(T, zs.t_max());
}

// Selection and measurement coordinates for the restricted pair statistics:
// raw ordinates in (T/log^2 T, T] mapped through N_bar, or a unit-scaling
// set taken literally.  Returns the transformed points and the normalizing
// height X.
struct Measured {
    std::vector<double> x;
    double X;
};

Measured measure_restricted(const ZeroSet& zs, double T) {
    check_height(zs, T);
    if (!(T > 1.05)) throw InvalidSpec("statistic height too small");
    const double lnT = std::log(T);
    const double lo = T / (lnT * lnT);
    Measured m;
    const auto ords = zs.ordinates();
    const auto first = std::upper_bound(ords.begin(), ords.end(), lo);
    const auto last = std::upper_bound(ords.begin(), ords.end(), T);
    m.x.reserve(last - first);
    if (zs.scaling() == Scaling::raw) {
        for (auto it = first; it != last; ++it) m.x.push_back(detail::nbar(*it));
        m.X = detail::nbar(T);
    } else {
        m.x.assign(first, last);
        m.X = T;
    }
    return m;
}

// Window events for N(t + delta) - N(t): +1 at gamma - delta, -1 at gamma.
struct Event {
    double pos;
    int delta;
};

std::vector<Event> window_events(std::span<const double> ords, double a,
                                 double b, double delta) {
    std::vector<Event> ev;
    ev.reserve(2 * ords.size());
    const auto enter_lo = std::lower_bound(ords.begin(), ords.end(), a + delta);
    const auto enter_hi = std::lower_bound(ords.begin(), ords.end(), b + delta);
    const auto exit_lo = std::lower_bound(ords.begin(), ords.end(), a);
    const auto exit_hi = std::lower_bound(ords.begin(), ords.end(), b);
    auto p = enter_lo;
    auto q = exit_lo;
    while (p != enter_hi || q != exit_hi) {
        const double tp = (p != enter_hi) ? *p - delta
                                          : std::numeric_limits<double>::infinity();
        const double tq = (q != exit_hi) ? *q
                                         : std::numeric_limits<double>::infinity();
        if (tp <= tq) {
            if (tp > a && tp < b) ev.push_back({tp, +1});
            ++p;
        } else {
            if (tq > a && tq < b) ev.push_back({tq, -1});
            ++q;
        }
    }
    return ev;
}

long window_count(std::span<const double> ords, double t, double delta) {
    return std::upper_bound(ords.begin(), ords.end(), t + delta) -
           std::upper_bound(ords.begin(), ords.end(), t);
}

// simple adaptive Simpson on a smooth integrand
template <class F>
double simpson_rec(const F& f, double a, double m, double b, double fa,
                   double fm, double fb, double whole, double eps, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15 * eps)
        return left + right + (left + right - whole) / 15;
    return simpson_rec(f, a, lm, m, fa, flm, fm, left, eps / 2, depth - 1) +
           simpson_rec(f, m, rm, b, fm, frm, fb, right, eps / 2, depth - 1);
}

template <class F>
double integrate_segment(const F& f, double a, double b, double rel) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    const double eps = std::max(1e-15, rel * std::fabs(whole));
    return simpson_rec(f, a, m, b, fa, fm, fb, whole, eps, 24);
}

constexpr long kChunk = 4096;

} // namespace

BinnedDensities BinnedDensities::from_densities(double T, double M, double L,
                                                std::vector<double> dens) {
    BinnedDensities bd;
    bd.T = T;
    bd.M = M;
    bd.L = L;
    bd.densities = std::move(dens);
    bd.counts.assign(bd.densities.size(), 0);
    return bd;
}

long pair_count(const ZeroSet& zs, double T, double lambda) {
    check_height(zs, T);
    if (!(lambda > 0)) throw InvalidSpec("pair_count requires lambda > 0");
    const auto g = points_leq(zs, T);
    const double L = zs.rescale_factor_at(T);
    const long n = static_cast<long>(g.size());
    long total = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : total)
#endif
    for (long i = 0; i < n; ++i) {
        // first index with value strictly above g[i]
        const auto eq_hi = std::upper_bound(g.begin() + i, g.end(), g[i]);
        // first index with (g[j] - g[i]) L > lambda
        const auto win_hi = std::partition_point(
            eq_hi, g.end(), [&](double v) { return (v - g[i]) * L <= lambda; });
        total += win_hi - eq_hi;
    }
    return total;
}

double d_statistic(const ZeroSet& zs, double T, double lambda) {
    check_height(zs, T);
    if (!(lambda > 0)) throw InvalidSpec("d_statistic requires lambda > 0");
    const auto g = points_leq(zs, T);
    const double L = zs.rescale_factor_at(T);
    const double delta = lambda / L;
    const long n = static_cast<long>(g.size());
    if (n == 0) return 0.0;

    std::vector<double> prefix(n + 1, 0.0);
    for (long i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + g[i];

    const long nchunks = (n + kChunk - 1) / kChunk;
    std::vector<double> part(nchunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long c = 0; c < nchunks; ++c) {
        Kahan local;
        const long i_end = std::min(n, (c + 1) * kChunk);
        for (long i = c * kChunk; i < i_end; ++i) {
            const auto win_hi = std::partition_point(
                g.begin() + i + 1, g.end(),
                [&](double v) { return (v - g[i]) * L <= lambda; });
            const long j_hi = win_hi - g.begin();
            const long cnt = j_hi - (i + 1);
            if (cnt > 0)
                local.add(cnt * (delta + g[i]) - (prefix[j_hi] - prefix[i + 1]));
        }
        part[c] = local.s;
    }
    Kahan total;
    total.add(n * delta);  // diagonal pairs
    for (long c = 0; c < nchunks; ++c) total.add(2.0 * part[c]);
    return total.s;
}

BinnedDensities bin_densities(const ZeroSet& zs, double T, double M) {
    if (!(M > 0)) throw InvalidSpec("bin_densities requires M > 0");
    const Measured m = measure_restricted(zs, T);
    const long kmax = static_cast<long>(std::floor(2 * M + 1e-9));
    const long n = static_cast<long>(m.x.size());

    std::vector<long> counts(kmax + 1, 0);
#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        std::vector<long> local(kmax + 1, 0);
#ifdef _OPENMP
#pragma omp for schedule(static) nowait
#endif
        for (long i = 0; i < n; ++i) {
            for (long j = i + 1; j < n; ++j) {
                const double d = m.x[j] - m.x[i];
                if (d > M) break;
                const long kp = static_cast<long>(std::ceil(2 * d - 0.5));
                const long km = static_cast<long>(std::floor(2 * d + 0.5));
                if (kp <= kmax) ++local[kp];
                if (km <= kmax) ++local[km];
            }
        }
#ifdef _OPENMP
#pragma omp critical
#endif
        for (long k = 0; k <= kmax; ++k) counts[k] += local[k];
    }
    counts[0] += n;  // diagonal

    BinnedDensities bd;
    bd.T = m.X;
    bd.M = M;
    bd.L = 1.0;
    bd.counts = std::move(counts);
    bd.densities.resize(kmax + 1);
    bd.densities[0] = static_cast<double>(bd.counts[0]) / m.X;
    for (long k = 1; k <= kmax; ++k)
        bd.densities[k] = static_cast<double>(bd.counts[k]) / (2.0 * m.X);
    return bd;
}

std::vector<AhResidual> ah_residuals(const ZeroSet& zs, double T, double M) {
    if (!(M > 0)) throw InvalidSpec("ah_residuals requires M > 0");
    const Measured m = measure_restricted(zs, T);
    const long n = static_cast<long>(m.x.size());
    std::vector<AhResidual> out;
    for (long i = 0; i < n; ++i) {
        for (long j = i + 1; j < n; ++j) {
            const double d = m.x[j] - m.x[i];
            if (d > M) break;
            const int k = static_cast<int>(std::ceil(2 * d - 0.5));
            out.push_back({k, std::fabs(d - 0.5 * k) / (k + 1)});
        }
    }
    return out;
}

namespace detail {

double windowed_cv_range(const ZeroSet& zs, double a, double b, double T,
                         double lambda) {
    const double L = zs.rescale_factor_at(T);
    const double delta = lambda / L;
    const auto ords = zs.ordinates();
    long g = window_count(ords, a, delta);
    const auto ev = window_events(ords, a, b, delta);
    Kahan acc;
    double prev = a;
    for (const auto& e : ev) {
        acc.add((e.pos - prev) * static_cast<double>(g) * g);
        g += e.delta;
        prev = e.pos;
    }
    acc.add((b - prev) * static_cast<double>(g) * g);
    return acc.s;
}

} // namespace detail

double windowed_count_variance(const ZeroSet& zs, double T, double lambda) {
    if (!(lambda > 0)) throw InvalidSpec("window requires lambda > 0");
    const double L = zs.rescale_factor_at(T);
    const double delta = lambda / L;
    if (T + delta > zs.t_max() + 1e-9)
        throw RangeBeyondCertified(T + delta, zs.t_max());

    constexpr int kCuts = 16;  // fixed partition keeps the sum deterministic
    std::vector<double> part(kCuts, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int c = 0; c < kCuts; ++c) {
        const double a = T * c / kCuts;
        const double b = T * (c + 1) / kCuts;
        part[c] = detail::windowed_cv_range(zs, a, b, T, lambda);
    }
    Kahan total;
    for (int c = 0; c < kCuts; ++c) total.add(part[c]);
    return total.s;
}

double windowed_s_variance(const ZeroSet& zs, double T, double lambda) {
    if (!(lambda > 0)) throw InvalidSpec("window requires lambda > 0");
    const double L = zs.rescale_factor_at(T);
    const double delta = lambda / L;
    if (T + delta > zs.t_max() + 1e-9)
        throw RangeBeyondCertified(T + delta, zs.t_max());
    const bool raw = zs.scaling() == Scaling::raw;
    const auto ords = zs.ordinates();

    // segment boundaries: window events plus the theta-extension joints
    std::vector<Event> ev = window_events(ords, 0.0, T, delta);
    std::vector<double> cuts;
    cuts.reserve(ev.size() + 6);
    cuts.push_back(0.0);
    std::size_t next_ev = 0;
    std::vector<double> extra;
    if (raw) {
        for (double c : {10.0 - delta, 10.0, 50.0 - delta, 50.0})
            if (c > 0 && c < T) extra.push_back(c);
        std::sort(extra.begin(), extra.end());
    }
    std::size_t next_extra = 0;
    std::vector<long> gs;
    long g = window_count(ords, 0.0, delta);
    gs.push_back(g);
    while (next_ev < ev.size() || next_extra < extra.size()) {
        const double te = next_ev < ev.size()
                              ? ev[next_ev].pos
                              : std::numeric_limits<double>::infinity();
        const double tx = next_extra < extra.size()
                              ? extra[next_extra]
                              : std::numeric_limits<double>::infinity();
        if (te <= tx) {
            cuts.push_back(te);
            g += ev[next_ev].delta;
            ++next_ev;
        } else {
            cuts.push_back(tx);
            ++next_extra;
        }
        gs.push_back(g);
    }
    cuts.push_back(T);

    const long nseg = static_cast<long>(cuts.size()) - 1;
    const long nchunks = (nseg + kChunk - 1) / kChunk;
    std::vector<double> part(nchunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long c = 0; c < nchunks; ++c) {
        Kahan local;
        const long s_end = std::min(nseg, (c + 1) * kChunk);
        for (long s = c * kChunk; s < s_end; ++s) {
            const double gv = static_cast<double>(gs[s]);
            auto f = [&](double t) {
                const double mean =
                    raw ? (detail::theta_extended(t + delta) -
                           detail::theta_extended(t)) / kPi
                        : delta;
                const double v = gv - mean;
                return v * v;
            };
            local.add(integrate_segment(f, cuts[s], cuts[s + 1], 1e-6));
        }
        part[c] = local.s;
    }
    Kahan total;
    for (long c = 0; c < nchunks; ++c) total.add(part[c]);
    return total.s;
}

WindowStatistics window_statistics(const ZeroSet& zs, double T, double lambda) {
    WindowStatistics ws;
    ws.T = T;
    ws.lambda = lambda;
    ws.count_variance = windowed_count_variance(zs, T, lambda);
    ws.s_variance = windowed_s_variance(zs, T, lambda);
    ws.d_value = d_statistic(zs, T, lambda);
    return ws;
}

MultiplicityCounts multiplicity_counts(const ZeroSet& zs, double T) {
    check_height(zs, T);
    const auto g = points_leq(zs, T);
    MultiplicityCounts mc;
    const long n = static_cast<long>(g.size());
    long i = 0;
    while (i < n) {
        long j = i + 1;
        while (j < n && g[j] - g[j - 1] <= zs.tol()) ++j;
        const long m = j - i;
        mc.n += m;
        mc.n_star += m * m;
        mc.n_circledast += m * m;
        if (m == 1) ++mc.n_simple;
        i = j;
    }
    mc.n_critical = mc.n;
    return mc;
}

double gm_bound_check(const ZeroSet& zs, double T, double h) {
    check_height(zs, T);
    if (h < 0 || h > T) throw InvalidSpec("gm_bound_check requires 0 <= h <= T");
    const auto g = points_leq(zs, T);
    const double L = zs.rescale_factor_at(T);
    const long n = static_cast<long>(g.size());
    long pairs = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : pairs)
#endif
    for (long i = 0; i < n; ++i) {
        const auto win_hi = std::partition_point(
            g.begin() + i + 1, g.end(),
            [&](double v) { return (v - g[i]) * L <= h; });
        pairs += win_hi - (g.begin() + i + 1);
    }
    const double total = static_cast<double>(n) + 2.0 * pairs;
    return total / ((1.0 + h) * T * L);
}

} // namespace zetapair
