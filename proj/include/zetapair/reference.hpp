#ifndef ZETAPAIR_REFERENCE_HPP
#define ZETAPAIR_REFERENCE_HPP

// Serial reference implementations: direct O(n^2) pair enumeration, sampled
// quadrature, and a plain grid zero scan.  These are the independent oracles
// the fast kernels are tested against, and the baselines the benchmark
// compares them with.  Library consumers should use pair_stats / zero_engine.

#include "zetapair/pair_stats.hpp"
#include "zetapair/zero_set.hpp"

#include <vector>

namespace zetapair::ref {

long pair_count(const ZeroSet& zs, double T, double lambda);
double d_statistic(const ZeroSet& zs, double T, double lambda);
std::vector<long> bin_counts(const ZeroSet& zs, double T, double M);
MultiplicityCounts multiplicity_counts(const ZeroSet& zs, double T);
long gm_pair_count(const ZeroSet& zs, double T, double h);

// Midpoint-rule approximation of int_0^T (N(t+lambda/L)-N(t))^2 dt.
double windowed_count_variance_sampled(const ZeroSet& zs, double T,
                                       double lambda, double dt);

// Uniform-grid sign-change scan refined by bisection; independent of the
// Gram-block machinery.  step_scale multiplies the local mean spacing.
std::vector<double> find_zeros_grid(double t_lo, double t_hi, double tol,
                                    double step_scale = 0.2);

} // namespace zetapair::ref

#endif
