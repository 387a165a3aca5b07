#include "zetapair/zero_store.hpp"
#include "zetapair/errors.hpp"
#include "zetapair/riemann_siegel.hpp"
#include "zetapair/zero_engine.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace zetapair {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr char kCacheMagic[8] = {'Z', 'P', 'Z', 'C', 'A', 'C', 'H', 'E'};
constexpr std::uint32_t kCacheVersion = 1;
} // namespace

ZeroSet::ZeroSet(std::vector<double> ordinates, Source source, Scaling scaling,
                 double tol, double t_max, bool verified)
    : ords_(std::move(ordinates)), source_(source), scaling_(scaling),
      tol_(tol), t_max_(t_max), verified_(verified) {
    if (tol_ <= 0) throw InvalidSpec("ZeroSet tol must be positive");
    for (std::size_t i = 0; i < ords_.size(); ++i) {
        if (!std::isfinite(ords_[i]) || ords_[i] <= 0)
            throw InvalidSpec("ZeroSet ordinates must be positive and finite");
        if (i > 0 && ords_[i] < ords_[i - 1])
            throw InvalidSpec("ZeroSet ordinates must be non-decreasing");
    }
    if (scaling_ == Scaling::raw && !ords_.empty() && ords_.front() <= 14.0)
        throw InvalidSpec("raw ordinates start above 14");
    if (!ords_.empty() && ords_.back() > t_max_)
        throw InvalidSpec("ordinate beyond declared t_max");
}

std::vector<double> ZeroSet::query_range(double a, double b) const {
    if (b > t_max_ + 1e-12) throw RangeBeyondCertified(b, t_max_);
    if (!(a < b)) throw InvalidSpec("query_range requires a < b");
    const auto lo = std::upper_bound(ords_.begin(), ords_.end(), a);
    const auto hi = std::upper_bound(ords_.begin(), ords_.end(), b);
    return std::vector<double>(lo, hi);
}

double ZeroSet::rescale_factor_at(double T) const {
    return scaling_ == Scaling::unit ? 1.0 : rescale_factor(T);
}

double rescale_factor(double T) {
    if (!(T > 1.0)) throw InvalidSpec("rescale_factor requires T > 1");
    return std::log(T) / kTwoPi;
}

double unfold_height(double T) { return detail::nbar(T); }

ZeroSet unfold(const ZeroSet& zs) {
    if (zs.scaling() == Scaling::unit)
        return zs;
    std::vector<double> x(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) x[i] = detail::nbar(zs[i]);
    const double slope =
        zs.t_max() > 10 ? detail::theta_derivative(zs.t_max()) / 3.141592653589793 : 1.0;
    return ZeroSet(std::move(x), zs.source(), Scaling::unit,
                   zs.tol() * std::max(slope, 1e-6), detail::nbar(zs.t_max()),
                   zs.verified());
}

ZeroSet ingest_table(std::istream& in, Source source, Scaling scaling, double tol) {
    std::vector<double> ords;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        if (line[b] == '#') continue;
        std::size_t e = line.find_last_not_of(" \t\r");
        const char* first = line.data() + b;
        const char* last = line.data() + e + 1;
        double v = 0;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last)
            throw ParseError(lineno, "not a decimal ordinate: '" +
                                         line.substr(b, e - b + 1) + "'");
        if (!std::isfinite(v) || v <= 0)
            throw ParseError(lineno, "ordinate must be positive and finite");
        if (!ords.empty() && v < ords.back()) throw MonotonicityError(lineno);
        ords.push_back(v);
    }
    const double t_max = ords.empty() ? 0.0 : ords.back();
    return ZeroSet(std::move(ords), source, scaling, tol, t_max, false);
}

ZeroSet ingest_table_file(const std::filesystem::path& path, Source source,
                          Scaling scaling, double tol) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path.string());
    return ingest_table(in, source, scaling, tol);
}

void write_table(const ZeroSet& zs, std::ostream& out) {
    char buf[64];
    for (double g : zs.ordinates()) {
        std::snprintf(buf, sizeof buf, "%.9f\n", g);
        out << buf;
    }
}

void write_table_file(const ZeroSet& zs, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(0, "cannot open " + path.string() + " for writing");
    write_table(zs, out);
}

void save_cache(const ZeroSet& zs, const std::filesystem::path& path) {
    static_assert(std::endian::native == std::endian::little,
                  "cache writer assumes a little-endian host");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(0, "cannot open " + path.string() + " for writing");
    out.write(kCacheMagic, 8);
    const std::uint32_t version = kCacheVersion;
    const std::uint32_t count = static_cast<std::uint32_t>(zs.size());
    out.write(reinterpret_cast<const char*>(&version), 4);
    out.write(reinterpret_cast<const char*>(&count), 4);
    out.write(reinterpret_cast<const char*>(zs.ordinates().data()),
              static_cast<std::streamsize>(sizeof(double) * zs.size()));
}

ZeroSet load_cache(const std::filesystem::path& path, Source source,
                   Scaling scaling, double tol, bool verified) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open " + path.string());
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kCacheMagic, 8) != 0)
        throw ParseError(0, "bad cache magic in " + path.string());
    std::uint32_t version = 0, count = 0;
    in.read(reinterpret_cast<char*>(&version), 4);
    in.read(reinterpret_cast<char*>(&count), 4);
    if (!in || version != kCacheVersion)
        throw ParseError(0, "unsupported cache version in " + path.string());
    std::vector<double> ords(count);
    in.read(reinterpret_cast<char*>(ords.data()),
            static_cast<std::streamsize>(sizeof(double) * count));
    if (!in) throw ParseError(0, "truncated cache " + path.string());
    const double t_max = ords.empty() ? 0.0 : ords.back();
    return ZeroSet(std::move(ords), source, scaling, tol, t_max, verified);
}

std::filesystem::path cache_directory() {
    const char* env = std::getenv("ZETAPAIR_CACHE_DIR");
    return env ? std::filesystem::path(env) : std::filesystem::path();
}

VerifyReport verify_against_engine(const ZeroSet& zs, double tol) {
    VerifyReport report;
    report.n_ingested = zs.size();
    if (zs.empty()) return report;

    const double refine_tol = std::max(1e-9, tol / 4);
    const auto computed = find_zeros(10.0, zs.t_max() + tol, refine_tol);
    report.n_computed = computed.size();

    // Mismatches list the ingested side; count disagreement (missing or
    // spurious zeros) is reflected by n_ingested vs n_computed.
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<char> used(computed.size(), 0);
    for (std::size_t i = 0; i < zs.size(); ++i) {
        const double g = zs[i];
        std::size_t best = computed.size();
        double best_d = std::numeric_limits<double>::infinity();
        const auto it = std::lower_bound(
            computed.begin(), computed.end(), g,
            [](const Ordinate& o, double v) { return o.gamma < v; });
        for (long k = static_cast<long>(it - computed.begin()) - 1;
             k <= static_cast<long>(it - computed.begin()); ++k) {
            if (k < 0 || k >= static_cast<long>(computed.size())) continue;
            const double d = std::fabs(computed[k].gamma - g);
            if (d < best_d) { best_d = d; best = static_cast<std::size_t>(k); }
        }
        if (best == computed.size() || best_d > tol || used[best]) {
            report.mismatches.push_back(
                {i, g, best == computed.size() ? nan : computed[best].gamma,
                 best == computed.size() ? nan : best_d});
        } else {
            used[best] = 1;
        }
    }
    return report;
}

} // namespace zetapair
