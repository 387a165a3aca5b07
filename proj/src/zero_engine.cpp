#include "zetapair/zero_engine.hpp"
#include "zetapair/riemann_siegel.hpp"
#include "zetapair/detail/zero_scan.hpp"
#include "zetapair/errors.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zetapair {

namespace {

constexpr double kPi = 3.141592653589793238462643383280;

struct GramGrid {
    std::vector<double> t;      // Gram points g_{-1} .. g_top, index i = n + 1
    std::vector<double> z;      // Z(g_n)
    std::vector<char> good;     // (-1)^n Z(g_n) > 0
    long top_index;             // Gram index of the last point
};

// Gram points from n = -1 up to the first good one at or above t_hi,
// with Z evaluated at each.
GramGrid build_grid(double t_hi) {
    GramGrid grid;
    const double th = detail::theta_series(std::max(t_hi, 18.0));
    long n_top = static_cast<long>(std::floor(th / kPi)) + 1;
    if (n_top < 1) n_top = 1;

    // Newton from the previous point is cheap; seed with gram_point for n=-1.
    grid.t.reserve(n_top + 8);
    grid.t.push_back(gram_point(-1).t);
    for (long n = 0; n <= n_top; ++n) {
        double t = grid.t.back() + kPi / detail::theta_derivative(grid.t.back());
        const double target = n * kPi;
        for (int it = 0; it < 30; ++it) {
            const double step = (detail::theta_series(t) - target) / detail::theta_derivative(t);
            t -= step;
            if (std::fabs(step) < 1e-11) break;
        }
        grid.t.push_back(t);
    }

    auto extend_until_good = [&grid]() {
        while (true) {
            const long n = grid.top_index;
            const double zn = grid.z.back();
            const bool good = (n % 2 == 0) ? (zn > 0) : (zn < 0);
            if (good) break;
            double t = grid.t.back() + kPi / detail::theta_derivative(grid.t.back());
            const double target = (n + 1) * kPi;
            for (int it = 0; it < 30; ++it) {
                const double step = (detail::theta_series(t) - target) / detail::theta_derivative(t);
                t -= step;
                if (std::fabs(step) < 1e-11) break;
            }
            grid.t.push_back(t);
            grid.z.push_back(detail::z_eval(t));
            ++grid.top_index;
        }
    };

    grid.z.resize(grid.t.size());
    const long m = static_cast<long>(grid.t.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
    for (long i = 0; i < m; ++i) grid.z[i] = detail::z_eval(grid.t[i]);
    grid.top_index = n_top;
    extend_until_good();

    grid.good.resize(grid.t.size());
    for (long i = 0; i < static_cast<long>(grid.t.size()); ++i) {
        const long n = i - 1;
        // the parity test below needs a nonzero sign; nudge exact zeros
        double zn = grid.z[i];
        if (zn == 0.0) {
            const double t2 = std::nextafter(grid.t[i], grid.t[i] + 1.0);
            zn = detail::z_eval(t2);
            grid.z[i] = zn;
            grid.t[i] = t2;
        }
        const bool even = ((n % 2) + 2) % 2 == 0;
        grid.good[i] = even ? (zn > 0) : (zn < 0);
    }
    return grid;
}

struct Block {
    long i_lo, i_hi;   // grid indices (bounds are good Gram points)
};

std::vector<Block> form_blocks(const GramGrid& grid) {
    std::vector<Block> blocks;
    if (!grid.good.front())
        throw UnresolvedBlock(grid.t.front(), grid.t.front(), 0, -1);
    long prev = 0;
    for (long i = 1; i < static_cast<long>(grid.t.size()); ++i) {
        if (grid.good[i]) {
            blocks.push_back({prev, i});
            prev = i;
        }
    }
    if (prev != static_cast<long>(grid.t.size()) - 1)
        throw UnresolvedBlock(grid.t[prev], grid.t.back(),
                              static_cast<long>(grid.t.size()) - 1 - prev, -1);
    return blocks;
}

// Brackets for every zero in (g_{-1}, g_top], block-certified.  Rosser-rule
// violations (a block showing more sign changes than its length) are retried
// on a window merged with neighbouring blocks before giving up.
std::vector<detail::Bracket> scan_brackets(const GramGrid& grid,
                                           const std::vector<Block>& blocks) {
    const auto z = [](double t) { return detail::z_eval(t); };
    std::vector<std::vector<detail::Bracket>> per_block(blocks.size());
    std::vector<char> failed(blocks.size(), 0);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (long b = 0; b < static_cast<long>(blocks.size()); ++b) {
        const Block& blk = blocks[b];
        try {
            per_block[b] = detail::resolve_block(z, grid.t[blk.i_lo], grid.t[blk.i_hi],
                                                 blk.i_hi - blk.i_lo,
                                                 blk.i_hi - blk.i_lo);
        } catch (const UnresolvedBlock&) {
            failed[b] = 1;
        }
    }

    // merge retry for isolated failures (serial; never triggered below 1e5)
    for (long b = 0; b < static_cast<long>(blocks.size()); ++b) {
        if (!failed[b]) continue;
        bool fixed = false;
        for (long w = 1; w <= 4 && !fixed; ++w) {
            const long lo = std::max<long>(0, b - w);
            const long hi = std::min<long>(blocks.size() - 1, b + w);
            const long i_lo = blocks[lo].i_lo, i_hi = blocks[hi].i_hi;
            try {
                auto merged = detail::resolve_block(z, grid.t[i_lo], grid.t[i_hi],
                                                    i_hi - i_lo, i_hi - i_lo);
                for (long k = lo; k <= hi; ++k) {
                    per_block[k].clear();
                    failed[k] = 0;
                }
                per_block[b] = std::move(merged);
                fixed = true;
            } catch (const UnresolvedBlock&) {
            }
        }
        if (!fixed) {
            const Block& blk = blocks[b];
            throw UnresolvedBlock(grid.t[blk.i_lo], grid.t[blk.i_hi],
                                  blk.i_hi - blk.i_lo, -1);
        }
    }

    std::vector<detail::Bracket> all;
    for (auto& v : per_block) all.insert(all.end(), v.begin(), v.end());
    return all;
}

} // namespace

std::vector<Ordinate> find_zeros(double t_lo, double t_hi, double tol) {
    if (t_lo < 10.0) throw DomainTooSmall(t_lo);
    if (!(t_lo < t_hi)) throw InvalidSpec("find_zeros requires t_lo < t_hi");
    if (tol < 1e-9) throw InvalidSpec("find_zeros requires tol >= 1e-9");

    const GramGrid grid = build_grid(t_hi);
    const auto blocks = form_blocks(grid);
    auto brackets = scan_brackets(grid, blocks);

    // keep brackets that can contain a zero in (t_lo, t_hi]
    std::erase_if(brackets, [&](const detail::Bracket& b) {
        return b.hi <= t_lo || b.lo > t_hi;
    });

    const auto z = [](double t) { return detail::z_eval(t); };
    std::vector<Ordinate> zeros(brackets.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 32)
#endif
    for (long i = 0; i < static_cast<long>(brackets.size()); ++i) {
        const auto [gamma, prec] = detail::refine_bracket(z, brackets[i], tol);
        zeros[i] = Ordinate{gamma, prec};
    }
    std::sort(zeros.begin(), zeros.end(),
              [](const Ordinate& a, const Ordinate& b) { return a.gamma < b.gamma; });
    std::erase_if(zeros, [&](const Ordinate& o) {
        return o.gamma <= t_lo || o.gamma > t_hi;
    });
    return zeros;
}

long count_zeros(double T) {
    if (T < 0.0) throw InvalidSpec("count_zeros requires T >= 0");
    if (T < 14.0) return 0;  // first ordinate is above 14

    const GramGrid grid = build_grid(T);
    const auto blocks = form_blocks(grid);
    auto brackets = scan_brackets(grid, blocks);

    long count = 0;
    const auto z = [](double t) { return detail::z_eval(t); };
    for (const auto& br : brackets) {
        if (br.hi <= T) {
            ++count;
        } else if (br.lo <= T) {
            // bracket straddles T: refine until it falls on one side
            const auto [gamma, prec] = detail::refine_bracket(z, br, 1e-9);
            (void)prec;
            if (gamma <= T) ++count;
        }
    }
    return count;
}

double s_function(double t) {
    if (t < 10.0) throw DomainTooSmall(t);
    return static_cast<double>(count_zeros(t)) - detail::theta_series(t) / kPi - 1.0;
}

namespace detail {

double gram_law_fraction(long n_max) {
    const GramGrid grid = build_grid(gram_point(n_max).t);
    const auto blocks = form_blocks(grid);
    const auto brackets = scan_brackets(grid, blocks);
    // count zeros per Gram interval (g_n, g_{n+1}]
    std::vector<long> per_interval(grid.t.size(), 0);
    const auto z = [](double t) { return detail::z_eval(t); };
    for (const auto& br : brackets) {
        const double mid = refine_bracket(z, br, 1e-6).first;
        const auto it = std::upper_bound(grid.t.begin(), grid.t.end(), mid);
        const long idx = it - grid.t.begin() - 1;
        if (idx >= 0 && idx < static_cast<long>(per_interval.size()))
            ++per_interval[idx];
    }
    long ones = 0, total = 0;
    for (long i = 1; i + 1 < static_cast<long>(grid.t.size()) && i <= n_max + 1; ++i) {
        ++total;
        if (per_interval[i] == 1) ++ones;
    }
    return total ? static_cast<double>(ones) / total : 0.0;
}

} // namespace detail

} // namespace zetapair
