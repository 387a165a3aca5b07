#include "zetapair/synthetic.hpp"
#include "zetapair/errors.hpp"
#include "zetapair/riemann_siegel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace zetapair {

namespace {

constexpr double kPi2 = 9.869604401089358618834490999876;

// Explicit transforms on top of mt19937_64 keep the streams identical on
// every platform; the standard distributions are implementation-defined.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double uniform01() {  // [0, 1)
        return static_cast<double>(eng() >> 11) * 0x1.0p-53;
    }
    double uniform_sym(double half_width) {
        return (2.0 * uniform01() - 1.0) * half_width;
    }
    double exponential1() { return -std::log1p(-uniform01()); }
};

ZeroSet finish_set(std::vector<double> x, SyntheticMode mode) {
    if (mode == SyntheticMode::rescaled) {
        const double t_max = x.empty() ? 0.0 : x.back();
        return ZeroSet(std::move(x), Source::synthetic, Scaling::unit, 1e-8,
                       t_max, true);
    }
    // mapped: t solves N_bar(t) = x + N_bar(100)
    const double offset = detail::nbar(100.0);
    std::vector<double> t(x.size());
    double guess = 100.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        guess = detail::nbar_inverse(x[i] + offset, guess);
        t[i] = guess;
    }
    const double t_max = t.empty() ? 0.0 : t.back();
    return ZeroSet(std::move(t), Source::synthetic, Scaling::raw, 1e-8, t_max,
                   true);
}

} // namespace

GapDistribution::GapDistribution(std::vector<double> lattice_mass)
    : mass_(std::move(lattice_mass)) {
    if (mass_.empty()) throw InvalidSpec("empty gap distribution");
    double sum = 0.0, mean = 0.0;
    for (std::size_t h = 0; h < mass_.size(); ++h) {
        if (mass_[h] < 0)
            throw InvalidSpec("gap masses must be nonnegative");
        sum += mass_[h];
        mean += mass_[h] * 0.5 * static_cast<double>(h + 1);
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw InvalidSpec("gap masses must sum to 1");
    if (std::fabs(mean - 1.0) > 1e-9)
        throw InvalidSpec("gap distribution must have unit mean");
}

double GapDistribution::mass_at_gap(double g) const {
    const double h = 2.0 * g;
    const long idx = std::lround(h);
    if (std::fabs(h - idx) > 1e-9 || idx < 1 ||
        idx > static_cast<long>(mass_.size()))
        return 0.0;
    return mass_[idx - 1];
}

double GapDistribution::mean() const {
    double m = 0.0;
    for (std::size_t h = 0; h < mass_.size(); ++h)
        m += mass_[h] * 0.5 * static_cast<double>(h + 1);
    return m;
}

GapDistribution GapDistribution::point_mass_at_one() {
    return GapDistribution(std::vector<double>{0.0, 1.0});
}

ZeroSet generate_ah_process(const SyntheticSpec& spec) {
    if (spec.n_points == 0) throw InvalidSpec("n_points must be positive");
    if (!(spec.jitter >= 0) || spec.jitter >= 0.25)
        throw InvalidSpec("jitter must lie in [0, 1/4)");
    const auto& mass = spec.gaps.lattice_mass();
    std::vector<double> cdf(mass.size());
    double acc = 0.0;
    for (std::size_t h = 0; h < mass.size(); ++h) {
        acc += mass[h];
        cdf[h] = acc;
    }
    cdf.back() = 1.0;

    Rng rng(spec.seed);
    std::vector<double> x(spec.n_points);
    double pos = 0.0;
    for (std::size_t i = 0; i < spec.n_points; ++i) {
        const double u = rng.uniform01();
        const std::size_t h =
            std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
        double gap = 0.5 * static_cast<double>(h + 1);
        if (spec.jitter > 0) gap += rng.uniform_sym(spec.jitter);
        pos += gap;
        x[i] = pos;
    }
    return finish_set(std::move(x), spec.mode);
}

ZeroSet generate_poisson(std::size_t n_points, std::uint64_t seed,
                         SyntheticMode mode) {
    if (n_points == 0) throw InvalidSpec("n_points must be positive");
    Rng rng(seed);
    std::vector<double> x(n_points);
    double pos = 0.0;
    for (std::size_t i = 0; i < n_points; ++i) {
        pos += rng.exponential1();
        x[i] = pos;
    }
    return finish_set(std::move(x), mode);
}

std::vector<double> renewal_pair_densities(const GapDistribution& q, int k_max) {
    if (k_max < 0) throw InvalidSpec("k_max must be nonnegative");
    const auto& mass = q.lattice_mass();
    const int H = static_cast<int>(mass.size());
    std::vector<double> u(k_max + 1, 0.0);
    u[0] = 1.0;
    for (int m = 1; m <= k_max; ++m) {
        double s = 0.0;
        for (int h = 1; h <= std::min(H, m); ++h) s += mass[h - 1] * u[m - h];
        u[m] = s;
    }
    return u;
}

double renewal_pair_density(const GapDistribution& q, double m) {
    const double h = 2.0 * m;
    const long idx = std::lround(h);
    if (m < 0 || std::fabs(h - idx) > 1e-9)
        throw InvalidSpec("renewal_pair_density requires a half-integer m >= 0");
    return renewal_pair_densities(q, static_cast<int>(idx))[idx];
}

namespace {

// Exact Euclidean projection onto {q >= 0, sum q = 1, sum h q = 2} by
// active-set elimination: project onto the affine subspace restricted to the
// free coordinates, freeze negatives, repeat.
std::vector<double> project_feasible(std::vector<double> q) {
    const int H = static_cast<int>(q.size());
    std::vector<char> frozen(H, 0);
    for (int round = 0; round < H + 2; ++round) {
        double s0 = 0, s1 = 0, s2 = 0, b0 = 0, b1 = 0;
        for (int i = 0; i < H; ++i) {
            if (frozen[i]) continue;
            const double h = i + 1.0;
            s0 += 1;
            s1 += h;
            s2 += h * h;
            b0 += q[i];
            b1 += q[i] * h;
        }
        if (s0 < 2) throw Infeasible("support too small for unit mean");
        // q_i - l0 - l1 h_i with constraints sum = 1, sum h = 2
        const double det = s0 * s2 - s1 * s1;
        if (std::fabs(det) < 1e-12) throw Infeasible("degenerate support");
        const double r0 = b0 - 1.0, r1 = b1 - 2.0;
        const double l0 = (s2 * r0 - s1 * r1) / det;
        const double l1 = (s0 * r1 - s1 * r0) / det;
        bool any_negative = false;
        for (int i = 0; i < H; ++i) {
            if (frozen[i]) { q[i] = 0.0; continue; }
            q[i] -= l0 + l1 * (i + 1.0);
            if (q[i] < -1e-15) any_negative = true;
        }
        if (!any_negative) {
            for (double& v : q) v = std::max(v, 0.0);
            return q;
        }
        for (int i = 0; i < H; ++i)
            if (!frozen[i] && q[i] < -1e-15) frozen[i] = 1;
    }
    throw Infeasible("projection did not converge");
}

struct Objective {
    // residuals r_l(u) and d r_l / d u_m are supplied by the caller
    int k_max;                          // u computed to index k_max
    std::vector<int> idx;               // residual l uses u[idx[l]] (primary)
    bool sums;                          // if true r_l = u[2l+1] + u[2l+2] - t_l
    std::vector<double> targets;
    double penalty;

    double eval(const std::vector<double>& q, std::vector<double>* grad) const {
        const int H = static_cast<int>(q.size());
        std::vector<double> u(k_max + 1, 0.0);
        u[0] = 1.0;
        for (int m = 1; m <= k_max; ++m) {
            double s = 0.0;
            for (int h = 1; h <= std::min(H, m); ++h) s += q[h - 1] * u[m - h];
            u[m] = s;
        }
        // forward sensitivities du[m][h]
        std::vector<std::vector<double>> du;
        if (grad) {
            du.assign(k_max + 1, std::vector<double>(H, 0.0));
            for (int m = 1; m <= k_max; ++m) {
                for (int h = 1; h <= std::min(H, m); ++h) {
                    du[m][h - 1] += u[m - h];
                    for (int g = 0; g < H; ++g)
                        du[m][g] += q[h - 1] * du[m - h][g];
                }
            }
            grad->assign(H, 0.0);
        }
        double f = 0.0;
        const long nres = static_cast<long>(targets.size());
        for (long l = 0; l < nres; ++l) {
            double r;
            if (sums) {
                r = u[2 * l + 1] + u[2 * l + 2] - targets[l];
            } else {
                r = u[idx[l]] - targets[l];
            }
            f += r * r;
            if (grad) {
                for (int g = 0; g < H; ++g) {
                    const double dr = sums ? du[2 * l + 1][g] + du[2 * l + 2][g]
                                           : du[idx[l]][g];
                    (*grad)[g] += 2 * r * dr;
                }
            }
        }
        if (penalty > 0 && std::isfinite(penalty)) {
            for (int h = 3; h <= H; ++h) {  // gaps g = h/2 > 1
                f += penalty * q[h - 1] * q[h - 1];
                if (grad) (*grad)[h - 1] += 2 * penalty * q[h - 1];
            }
        }
        return f;
    }
};

FitResult run_fit(Objective obj, double g_max) {
    if (g_max < 1.0 - 1e-12)
        throw Infeasible("g_max below 1: unit mean unreachable");
    int H = static_cast<int>(std::floor(2 * g_max + 1e-9));
    const bool hard_cap = std::isinf(obj.penalty);
    if (hard_cap) {
        H = std::min(H, 2);
        obj.penalty = 0.0;
    }
    std::vector<double> q(H, 1.0 / H);
    q = project_feasible(std::move(q));

    double lr = 0.05;
    std::vector<double> grad;
    double f = obj.eval(q, &grad);
    long it = 0;
    for (; it < 20000; ++it) {
        std::vector<double> trial(H);
        for (int i = 0; i < H; ++i) trial[i] = q[i] - lr * grad[i];
        trial = project_feasible(std::move(trial));
        const double ft = obj.eval(trial, nullptr);
        if (ft < f - 1e-16) {
            double step = 0.0;
            for (int i = 0; i < H; ++i)
                step = std::max(step, std::fabs(trial[i] - q[i]));
            q = std::move(trial);
            f = obj.eval(q, &grad);
            lr *= 1.2;
            if (step < 1e-12 && it > 100) break;
        } else {
            lr *= 0.5;
            if (lr < 1e-14) break;
        }
    }
    return FitResult{GapDistribution(q), std::sqrt(f), it};
}

} // namespace

FitResult fit_gap_distribution(
    const std::vector<std::pair<double, double>>& targets, double g_max,
    double penalty) {
    if (targets.empty()) throw InvalidSpec("no fit targets");
    Objective obj;
    obj.sums = false;
    obj.penalty = penalty;
    int k_max = 0;
    for (const auto& [half_k, value] : targets) {
        const long idx = std::lround(2 * half_k);
        if (idx < 1 || std::fabs(2 * half_k - idx) > 1e-9)
            throw InvalidSpec("targets must be indexed by positive half-integers");
        obj.idx.push_back(static_cast<int>(idx));
        obj.targets.push_back(value);
        k_max = std::max<int>(k_max, static_cast<int>(idx));
    }
    obj.k_max = k_max;
    return run_fit(std::move(obj), g_max);
}

FitResult fit_gap_distribution_to_sums(const std::vector<double>& sum_targets,
                                       double g_max, double penalty) {
    if (sum_targets.empty()) throw InvalidSpec("no fit targets");
    Objective obj;
    obj.sums = true;
    obj.penalty = penalty;
    obj.targets = sum_targets;
    obj.k_max = 2 * static_cast<int>(sum_targets.size());
    return run_fit(std::move(obj), g_max);
}

std::vector<std::pair<double, double>> ah_targets(int K) {
    if (K < 1) throw InvalidSpec("K must be >= 1");
    std::vector<std::pair<double, double>> t;
    for (int k = 1; k <= 2 * K; ++k) {
        const double v = (k % 2 == 1)
                             ? 0.5 - 2.0 / (kPi2 * static_cast<double>(k) * k)
                             : 0.5;
        t.emplace_back(0.5 * k, v);
    }
    return t;
}

std::vector<double> ah_sum_targets(int K) {
    if (K < 1) throw InvalidSpec("K must be >= 1");
    std::vector<double> s(K);
    for (int j = 1; j <= K; ++j)
        s[j - 1] =
            1.0 - 2.0 / (kPi2 * static_cast<double>(2 * j - 1) * (2 * j - 1));
    return s;
}

} // namespace zetapair
