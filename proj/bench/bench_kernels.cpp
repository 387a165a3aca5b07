// Benchmark: OpenMP kernels against their serial reference implementations.
//
//   bench_kernels [n_points] [t_hi]
//
// Compares the Gram-block zero scan with the plain grid scan, and the
// two-pointer pair kernels / exact breakpoint integrals with the O(n^2)
// enumeration and sampled quadrature kept for testing.

#include "zetapair/pair_stats.hpp"
#include "zetapair/reference.hpp"
#include "zetapair/synthetic.hpp"
#include "zetapair/zero_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
static double now() { return omp_get_wtime(); }
static int threads() { return omp_get_max_threads(); }
#else
#include <chrono>
static double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}
static int threads() { return 1; }
#endif

using namespace zetapair;

namespace {

struct Row {
    const char* name;
    double fast_s;
    double ref_s;
    double check;  // relative or absolute agreement between the two routes
};

void print(const Row& r) {
    std::printf("  %-28s %10.3fs %12.3fs %9.1fx   agree %.2e\n", r.name,
                r.fast_s, r.ref_s, r.ref_s / r.fast_s, r.check);
}

} // namespace

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200000;
    const double t_hi = argc > 2 ? std::strtod(argv[2], nullptr) : 1200.0;

    std::printf("zetapair kernel benchmark (%d threads)\n", threads());
    std::printf("  %-28s %11s %13s %10s\n", "kernel", "parallel", "reference", "speedup");

    // ---- zero scan ----
    {
        double t0 = now();
        const auto fast = find_zeros(10.0, t_hi, 1e-8);
        const double t1 = now();
        const auto slow = ref::find_zeros_grid(10.0, t_hi, 1e-8);
        const double t2 = now();
        double worst = fast.size() == slow.size() ? 0.0 : 1.0;
        for (std::size_t i = 0; i < fast.size() && i < slow.size(); ++i)
            worst = std::max(worst, std::fabs(fast[i].gamma - slow[i]));
        print({"zero scan", t1 - t0, t2 - t1, worst});
    }

    // ---- pair kernels on a synthetic set ----
    SyntheticSpec spec{n, GapDistribution({0.25, 0.5, 0.25}), 0.05, 1234,
                       SyntheticMode::rescaled};
    const auto zs = generate_ah_process(spec);
    const double T = zs.t_max() - 10.0;
    const std::size_t n_ref = std::min<std::size_t>(n, 20000);
    SyntheticSpec small_spec = spec;
    small_spec.n_points = n_ref;
    const auto zs_small = generate_ah_process(small_spec);
    const double T_small = zs_small.t_max() - 10.0;

    {
        const double t0 = now();
        const long fast = pair_count(zs, T, 4.0);
        const double t1 = now();
        (void)fast;
        const long fs = pair_count(zs_small, T_small, 4.0);
        const double t2 = now();
        const long rs = ref::pair_count(zs_small, T_small, 4.0);
        const double t3 = now();
        // scale the reference time to the full n (quadratic cost)
        const double scale = static_cast<double>(n) / n_ref;
        print({"pair_count", t1 - t0, (t3 - t2) * scale * scale,
               std::fabs(static_cast<double>(fs - rs))});
    }
    {
        const double t0 = now();
        const double fast = d_statistic(zs, T, 4.0);
        const double t1 = now();
        (void)fast;
        const double fs = d_statistic(zs_small, T_small, 4.0);
        const double t2 = now();
        const double rs = ref::d_statistic(zs_small, T_small, 4.0);
        const double t3 = now();
        const double scale = static_cast<double>(n) / n_ref;
        print({"d_statistic", t1 - t0, (t3 - t2) * scale * scale,
               std::fabs(fs - rs) / std::fabs(rs)});
    }
    {
        const double t0 = now();
        const auto bd = bin_densities(zs, T, 8.0);
        const double t1 = now();
        const auto bs = bin_densities(zs_small, T_small, 8.0);
        const double t2 = now();
        const auto rc = ref::bin_counts(zs_small, T_small, 8.0);
        const double t3 = now();
        long diff = 0;
        for (std::size_t k = 0; k < rc.size(); ++k)
            diff += std::labs(bs.counts[k] - rc[k]);
        (void)bd;
        const double scale = static_cast<double>(n) / n_ref;
        print({"bin_densities", t1 - t0, (t3 - t2) * scale * scale,
               static_cast<double>(diff)});
    }
    {
        const double lam = 8.0;
        const double Tw = T - 20.0;
        const double t0 = now();
        const double fast = windowed_count_variance(zs, Tw, lam);
        const double t1 = now();
        const double slow = ref::windowed_count_variance_sampled(zs, Tw, lam, 0.01);
        const double t2 = now();
        print({"windowed_count_variance", t1 - t0, t2 - t1,
               std::fabs(fast - slow) / std::fabs(fast)});
    }

    return 0;
}
