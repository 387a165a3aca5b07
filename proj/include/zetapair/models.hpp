#ifndef ZETAPAIR_MODELS_HPP
#define ZETAPAIR_MODELS_HPP

#include "zetapair/pair_stats.hpp"
#include "zetapair/zero_set.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace zetapair {

enum class Statistic { bin_mass, density, theorem2_side, d_asymptotic, p0 };

struct ModelPrediction {
    Statistic statistic;
    double value;
    std::string equation;  // citation tag, e.g. "gue-bin-mass"
};

// Validated construction: the value must be finite and the tag nonempty.
ModelPrediction make_prediction(Statistic statistic, double value,
                                std::string equation);

// 1 - (sin(pi a)/(pi a))^2 with the removable singularity at a = 0.
double gue_pair_integrand(double alpha);

// Integral of the pair integrand over the bin (k/2 - 1/4, k/2 + 1/4],
// symmetric-density convention (single-sign bin mass for k > 0); for k = 0
// the integral over (-1/4, 1/4] plus 1 when the diagonal is included.
// Adaptive quadrature with absolute tolerance 1e-10.
double gue_bin_mass(int k, bool include_diagonal = true);

// Asymptotic bin density under AH: P0 - 1/2 for even k != 0,
// 3/2 - 2/(pi^2 k^2) - P0 for odd k.
double ah_density_prediction(int k, double p0);

// Left side of the main averaged identity:
// 2 sum_{j=1}^{M} (M-j) (P_{j-1/2} + P_j - (1 - 2/(pi^2 (2j-1)^2))).
double theorem2_lhs(const BinnedDensities& bd, int M);

// Right side main terms plus the error envelopes, kept separate.
struct Theorem2Rhs {
    double value;              // (3/2 - P0) M - sum_{j<=M} P_{j-1/2}
    double env_sqrt_log_m;     // sqrt(log M)
    double env_m2_per_l2;      // M^2 / L^2 (the R(T) part has no known form)
};
Theorem2Rhs theorem2_rhs(const BinnedDensities& bd, int M);

// residual_j = P_{j-1/2} + P_j - (1 - 2/(pi^2 (2j-1)^2)), j = 1..M
std::vector<double> ah1_check(const BinnedDensities& bd);

// sum_{j<=M} P_{j-1/2} - (M/2 - 1/4)
double ah2_check(const BinnedDensities& bd, int M);

// The two averaged estimators of P0:
// 3/2 - (1/M) sum P_{j-1/2}  and  1/2 + (1/M) sum P_j.
std::pair<double, double> p0_estimate(const BinnedDensities& bd, int M);

// Main terms of D(T, lambda): lambda^2 T + (T/pi^2) log(2 + lambda), with
// the error envelope T sqrt(log(2+lambda)) reported separately.
struct DAsymptotic {
    double value;
    double envelope;
};
DAsymptotic d_asymptotic(double T, double lambda);

// direct = 2 sum_{j=1}^{M} (M-j)(1 - 2/(pi^2 (2j-1)^2));
// closed = M^2 - (3/2) M + log(M)/pi^2.
struct SumIdentity {
    double direct;
    double closed;
};
SumIdentity sum_identity(long M);

// Essential-simplicity diagnostics: (N~ + 2 N(T, l0)) / (T L) per l0, plus
// the simple and critical fractions.  Raw sets are measured in unfolded
// coordinates (same convention as bin_densities).
struct EsDiagnostics {
    std::vector<std::pair<double, double>> ratios;  // (lambda0, ratio)
    double simple_fraction = 0;
    double critical_fraction = 0;
    MultiplicityCounts counts;
};
EsDiagnostics es_diagnostics(const ZeroSet& zs, double T,
                             std::span<const double> lambda0_grid);

} // namespace zetapair

#endif
