#include "zetapair/models.hpp"
#include "zetapair/errors.hpp"

#include <cmath>

namespace zetapair {

namespace {

constexpr double kPi = 3.141592653589793238462643383280;
constexpr double kPi2 = kPi * kPi;

double ah1_main(int j) { return 1.0 - 2.0 / (kPi2 * (2.0 * j - 1) * (2.0 * j - 1)); }

// bins available in bd for j = 1..M: needs indices up to 2M
void require_bins(const BinnedDensities& bd, int M) {
    if (M < 1) throw InsufficientBins("M must be >= 1");
    if (static_cast<long>(bd.densities.size()) < 2L * M + 1)
        throw InsufficientBins(
            "densities cover k <= " +
            std::to_string(bd.densities.empty() ? 0 : bd.densities.size() - 1) +
            ", need 2M = " + std::to_string(2 * M));
}

template <class F>
double simpson_rec(const F& f, double a, double m, double b, double fa,
                   double fm, double fb, double whole, double eps, int depth,
                   int min_depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    // the min_depth floor guards against lucky Richardson agreement on
    // oscillating integrands
    if (depth <= 0 ||
        (min_depth <= 0 && std::fabs(left + right - whole) <= 15 * eps))
        return left + right + (left + right - whole) / 15;
    return simpson_rec(f, a, lm, m, fa, flm, fm, left, eps / 2, depth - 1,
                       min_depth - 1) +
           simpson_rec(f, m, rm, b, fm, frm, fb, right, eps / 2, depth - 1,
                       min_depth - 1);
}

template <class F>
double integrate(const F& f, double a, double b, double abs_tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return simpson_rec(f, a, m, b, fa, fm, fb, whole, abs_tol, 40, 4);
}

} // namespace

ModelPrediction make_prediction(Statistic statistic, double value,
                                std::string equation) {
    if (!std::isfinite(value))
        throw InvalidSpec("model prediction must be finite");
    if (equation.empty())
        throw InvalidSpec("model prediction needs an equation tag");
    return ModelPrediction{statistic, value, std::move(equation)};
}

double gue_pair_integrand(double alpha) {
    const double x = kPi * alpha;
    if (std::fabs(x) < 1e-4) {
        // sinc^2 = 1 - x^2/3 + 2x^4/45 - ...
        const double x2 = x * x;
        return x2 / 3 - 2 * x2 * x2 / 45;
    }
    const double s = std::sin(x) / x;
    return 1.0 - s * s;
}

double gue_bin_mass(int k, bool include_diagonal) {
    if (k < 0) throw InvalidSpec("gue_bin_mass requires k >= 0");
    if (k == 0) {
        const double half = integrate(gue_pair_integrand, 0.0, 0.25, 5e-11);
        return 2 * half + (include_diagonal ? 1.0 : 0.0);
    }
    const double lo = 0.5 * k - 0.25, hi = 0.5 * k + 0.25;
    return integrate(gue_pair_integrand, lo, hi, 1e-10);
}

double ah_density_prediction(int k, double p0) {
    if (k == 0) throw ZeroKNotAllowed();
    if (k % 2 == 0) return p0 - 0.5;
    return 1.5 - 2.0 / (kPi2 * static_cast<double>(k) * k) - p0;
}

double theorem2_lhs(const BinnedDensities& bd, int M) {
    require_bins(bd, M);
    double acc = 0.0;
    for (int j = 1; j <= M; ++j) {
        const double ph = bd.densities[2 * j - 1];
        const double pj = bd.densities[2 * j];
        acc += (M - j) * (ph + pj - ah1_main(j));
    }
    return 2.0 * acc;
}

Theorem2Rhs theorem2_rhs(const BinnedDensities& bd, int M) {
    require_bins(bd, M);
    double half_sum = 0.0;
    for (int j = 1; j <= M; ++j) half_sum += bd.densities[2 * j - 1];
    Theorem2Rhs r;
    r.value = (1.5 - bd.densities[0]) * M - half_sum;
    r.env_sqrt_log_m = std::sqrt(std::log(static_cast<double>(M)));
    r.env_m2_per_l2 = bd.L > 0 && bd.T > 1
                          ? static_cast<double>(M) * M /
                                (std::log(bd.T) / (2 * kPi) * std::log(bd.T) / (2 * kPi))
                          : 0.0;
    return r;
}

std::vector<double> ah1_check(const BinnedDensities& bd) {
    const int M = static_cast<int>((bd.densities.size() - 1) / 2);
    std::vector<double> res(M);
    for (int j = 1; j <= M; ++j)
        res[j - 1] = bd.densities[2 * j - 1] + bd.densities[2 * j] - ah1_main(j);
    return res;
}

double ah2_check(const BinnedDensities& bd, int M) {
    require_bins(bd, M);
    double half_sum = 0.0;
    for (int j = 1; j <= M; ++j) half_sum += bd.densities[2 * j - 1];
    return half_sum - (0.5 * M - 0.25);
}

std::pair<double, double> p0_estimate(const BinnedDensities& bd, int M) {
    require_bins(bd, M);
    double half_sum = 0.0, int_sum = 0.0;
    for (int j = 1; j <= M; ++j) {
        half_sum += bd.densities[2 * j - 1];
        int_sum += bd.densities[2 * j];
    }
    return {1.5 - half_sum / M, 0.5 + int_sum / M};
}

DAsymptotic d_asymptotic(double T, double lambda) {
    if (!(T > 1)) throw InvalidSpec("d_asymptotic requires T > 1");
    DAsymptotic d;
    d.value = lambda * lambda * T + T / kPi2 * std::log(2.0 + lambda);
    d.envelope = T * std::sqrt(std::log(2.0 + lambda));
    return d;
}

SumIdentity sum_identity(long M) {
    if (M < 1) throw InvalidSpec("sum_identity requires M >= 1");
    double direct = 0.0;
    for (long j = M - 1; j >= 1; --j)  // small terms first
        direct += (M - j) * ah1_main(static_cast<int>(j));
    return {2.0 * direct,
            static_cast<double>(M) * M - 1.5 * M + std::log(static_cast<double>(M)) / kPi2};
}

EsDiagnostics es_diagnostics(const ZeroSet& zs, double T,
                             std::span<const double> lambda0_grid) {
    EsDiagnostics out;
    if (zs.scaling() == Scaling::raw) {
        // measure in unfolded coordinates, like the bin densities
        const ZeroSet u = unfold(zs);
        return es_diagnostics(u, unfold_height(T), lambda0_grid);
    }
    out.counts = multiplicity_counts(zs, T);
    const double denom = T;  // T * L with L = 1
    for (double l0 : lambda0_grid) {
        const double ratio =
            (out.counts.n_circledast + 2.0 * pair_count(zs, T, l0)) / denom;
        out.ratios.emplace_back(l0, ratio);
    }
    if (out.counts.n > 0) {
        out.simple_fraction =
            static_cast<double>(out.counts.n_simple) / out.counts.n;
        out.critical_fraction =
            static_cast<double>(out.counts.n_critical) / out.counts.n;
    }
    return out;
}

} // namespace zetapair
