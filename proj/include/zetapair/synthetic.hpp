#ifndef ZETAPAIR_SYNTHETIC_HPP
#define ZETAPAIR_SYNTHETIC_HPP

#include "zetapair/zero_set.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace zetapair {

// Probability masses on the half-integer gap lattice {1/2, 1, 3/2, ...}.
// Invariants: masses >= 0, sum to 1 (+-1e-12), unit mean (+-1e-9).
class GapDistribution {
public:
    // mass[h-1] is the probability of gap h/2, h = 1..H.
    explicit GapDistribution(std::vector<double> lattice_mass);

    const std::vector<double>& lattice_mass() const { return mass_; }
    double g_max() const { return 0.5 * static_cast<double>(mass_.size()); }
    double mass_at_gap(double g) const;
    double mean() const;

    static GapDistribution point_mass_at_one();

private:
    std::vector<double> mass_;
};

enum class SyntheticMode { rescaled, mapped };

struct SyntheticSpec {
    std::size_t n_points;
    GapDistribution gaps;
    double jitter = 0.0;      // per-gap uniform half-width, rescaled units
    std::uint64_t seed = 0;
    SyntheticMode mode = SyntheticMode::rescaled;
};

// Cumulative sums of i.i.d. gaps, each perturbed by uniform(-jitter, jitter).
// rescaled: unit-spacing ordinates (statistics use L = 1).  mapped: heights
// solving N_bar(t) = x + N_bar(100), so the local mean spacing matches the
// zero density.  Bit-reproducible from the seed (mt19937_64 with explicit
// inversion transforms).
ZeroSet generate_ah_process(const SyntheticSpec& spec);

// Exponential(1) gaps, same mapping options; the Poisson control.
ZeroSet generate_poisson(std::size_t n_points, std::uint64_t seed,
                         SyntheticMode mode = SyntheticMode::rescaled);

// Renewal sequence u(m) = sum_{g <= m} q(g) u(m-g), u(0) = 1, on the
// half-integer lattice: the predicted pair density at lattice distance m
// for the jitter-free process.  m must be a nonnegative half-integer.
double renewal_pair_density(const GapDistribution& q, double m);

// u(k/2) for k = 0..k_max.
std::vector<double> renewal_pair_densities(const GapDistribution& q, int k_max);

struct FitResult {
    GapDistribution gaps;
    double residual_norm;
    long iterations;
};

// Least-squares fit of a gap distribution to per-bin density targets
// (half-integer index k/2 -> density), by projected gradient descent from
// the uniform feasible start on the simplex intersected with the unit-mean
// hyperplane.  `penalty` adds penalty * sum_{g>1} q(g)^2; infinity restricts
// the support to g <= 1.  Throws Infeasible when g_max < 1 (unit mean cannot
// be reached).  Fit quality is reported, optimality is not claimed.
FitResult fit_gap_distribution(
    const std::vector<std::pair<double, double>>& targets, double g_max,
    double penalty = 0.0);

// Same optimizer, but matching the consecutive-density sums
// u(j-1/2) + u(j) to sum_targets[j-1].  This is the form the weak-density
// hypothesis actually constrains; the per-bin split is left to the fit.
FitResult fit_gap_distribution_to_sums(const std::vector<double>& sum_targets,
                                       double g_max, double penalty = 0.0);

// Target builders: per-bin densities (k = 1..2K) and per-j sums (j = 1..K)
// of the asymptotic AH densities with p0 = 1.
std::vector<std::pair<double, double>> ah_targets(int K);
std::vector<double> ah_sum_targets(int K);

} // namespace zetapair

#endif
