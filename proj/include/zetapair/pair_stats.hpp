#ifndef ZETAPAIR_PAIR_STATS_HPP
#define ZETAPAIR_PAIR_STATS_HPP

#include "zetapair/zero_set.hpp"

#include <vector>

namespace zetapair {

// Folded bin statistics for pairs restricted to (T/log^2 T, T].
//
// For raw zeta ordinates the pair differences are measured in unfolded
// coordinates (through N_bar = theta/pi + 1) and the normalizing height is
// X = N_bar(T); at finite desk-scale heights the literal global rescaling
// (gamma - gamma') log(T)/2pi misstates the asymptotic statistic badly
// (the local mean spacing varies across (T/log^2 T, T]), while the unfolded
// measurement converges to the same T -> infinity limit.  Unit-scaling sets
// are measured literally with L = 1.
struct BinnedDensities {
    double T = 0;    // statistic height in measurement coordinates
    double M = 0;
    double L = 1;    // rescale factor in effect for the measurement
    std::vector<long> counts;       // k = 0..floor(2M); |B_{k/2}| with +k and
                                    // -k aggregated for k > 0, diagonal in k=0
    std::vector<double> densities;  // k=0: counts[0]/(T L);
                                    // k>0: counts[k]/(2 T L)  (symmetric density)

    // Construct directly from a density vector (model-side idealized inputs).
    static BinnedDensities from_densities(double T, double M, double L,
                                          std::vector<double> dens);
};

struct WindowStatistics {
    double T = 0;
    double lambda = 0;
    double count_variance = 0;  // int_0^T (N(t+lambda/L) - N(t))^2 dt
    double s_variance = 0;      // int_0^T (S(t+lambda/L) - S(t))^2 dt
    double d_value = 0;         // D(T, lambda)
};

struct MultiplicityCounts {
    long n = 0;            // N(T)
    long n_star = 0;       // N*(T)  = sum m^2 over clusters
    long n_circledast = 0; // N~(T)  = equal-height ordered pair count
    long n_simple = 0;     // clusters of size 1
    long n_critical = 0;   // N_0(T); equals n for computed/ingested data
};

struct AhResidual {
    int k;            // bin index (nearest half-integer convention)
    double residual;  // |(gamma-gamma')L - k/2| / (|k|+1)
};

// Ordered pairs with both ordinates in (0, T] and 0 < (gamma-gamma') L <= lambda.
long pair_count(const ZeroSet& zs, double T, double lambda);

// D(T, lambda): sum over ordered pairs (diagonal included) with
// |(gamma-gamma') L| <= lambda of (lambda/L - |gamma-gamma'|).
double d_statistic(const ZeroSet& zs, double T, double lambda);

BinnedDensities bin_densities(const ZeroSet& zs, double T, double M);

// Per-pair AH0 residuals over the restricted pair set (one entry per
// unordered off-diagonal pair, k >= 0).
std::vector<AhResidual> ah_residuals(const ZeroSet& zs, double T, double M);

// Exact breakpoint-decomposition value of int_0^T (N(t+lambda/L)-N(t))^2 dt.
// Requires completeness up to T + lambda/L.
double windowed_count_variance(const ZeroSet& zs, double T, double lambda);

// int_0^T (S(t+lambda/L)-S(t))^2 dt by per-segment adaptive quadrature.
// Below t = 50 theta is extended by its smooth main terms (documented
// approximation).  For unit sets S(x) = N(x) - x.
double windowed_s_variance(const ZeroSet& zs, double T, double lambda);

WindowStatistics window_statistics(const ZeroSet& zs, double T, double lambda);

MultiplicityCounts multiplicity_counts(const ZeroSet& zs, double T);

// [# ordered pairs with |(gamma-gamma')L| <= h, diagonal included] / ((1+h) T L).
double gm_bound_check(const ZeroSet& zs, double T, double h);

namespace detail {
// Windowed count variance over [a, b] (used for chunked parallel evaluation
// and the additivity test).
double windowed_cv_range(const ZeroSet& zs, double a, double b, double T,
                         double lambda);
} // namespace detail

} // namespace zetapair

#endif
