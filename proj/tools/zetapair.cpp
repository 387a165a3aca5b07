// zetapair: batch CLI for zeta-zero pair correlation statistics.
//
// Subcommands: zeros (compute|ingest|verify), stats (pairs|densities|
// variance|multiplicity), models (compare|theorem2|sumid), synth
// (generate|fit).  All outputs start with a '#' header echoing the
// effective configuration; identical configurations produce byte-identical
// files.  Exit codes: 0 success, 1 usage/parse error, 2 verification
// mismatch, 3 range beyond certified data, 4 unresolved zero block.

#include "zetapair/models.hpp"
#include "zetapair/pair_stats.hpp"
#include "zetapair/riemann_siegel.hpp"
#include "zetapair/synthetic.hpp"
#include "zetapair/zero_engine.hpp"
#include "zetapair/zero_set.hpp"
#include "zetapair/zero_store.hpp"
#include "zetapair/errors.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;
using namespace zetapair;

constexpr const char* kVersion = "zetapair 0.1.0";

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::runtime_error("empty numeric list");
    return out;
}

std::string fmt(double v, int prec = 9) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Tabular output with a '#' config header; CSV or JSON per --format.
struct Table {
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_config(const std::string& k, const std::string& v) {
        config.emplace_back(k, v);
    }
    void write_csv(std::ostream& os) const {
        os << "# " << kVersion << "\n";
        for (const auto& [k, v] : config) os << "# " << k << " = " << v << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            os << columns[i] << (i + 1 < columns.size() ? "," : "\n");
        for (const auto& row : rows)
            for (std::size_t i = 0; i < row.size(); ++i)
                os << row[i] << (i + 1 < row.size() ? "," : "\n");
    }
    void write_json(std::ostream& os) const {
        json j;
        j["version"] = kVersion;
        for (const auto& [k, v] : config) j["config"][k] = v;
        j["rows"] = json::array();
        for (const auto& row : rows) {
            json r;
            for (std::size_t i = 0; i < row.size(); ++i) {
                try {
                    std::size_t pos = 0;
                    const double d = std::stod(row[i], &pos);
                    if (pos == row[i].size()) { r[columns[i]] = d; continue; }
                } catch (...) {}
                r[columns[i]] = row[i];
            }
            j["rows"].push_back(std::move(r));
        }
        os << j.dump(2) << "\n";
    }
    void write(const std::string& path, const std::string& format) const {
        std::ostream* os = &std::cout;
        std::ofstream f;
        if (!path.empty()) {
            f.open(path);
            if (!f) throw std::runtime_error("cannot open " + path);
            os = &f;
        }
        if (format == "json") write_json(*os);
        else write_csv(*os);
    }
};

// Zero tables are plain text with '#' comments; a "scaling: unit" comment
// marks rescaled synthetic sequences.  Binary caches are detected by magic.
ZeroSet load_input(const std::string& path, double tol) {
    std::filesystem::path p(path);
    if (!std::filesystem::exists(p)) {
        const auto dir = cache_directory();
        if (!dir.empty() && std::filesystem::exists(dir / p)) p = dir / p;
    }
    std::ifstream probe(p, std::ios::binary);
    if (!probe) throw std::runtime_error("cannot open " + p.string());
    char magic[8] = {};
    probe.read(magic, 8);
    probe.close();
    if (std::string_view(magic, 8) == std::string_view("ZPZCACHE", 8))
        return load_cache(p, Source::computed, Scaling::raw, tol, true);

    Scaling scaling = Scaling::raw;
    double declared_t_max = 0.0;
    {
        std::ifstream scan(p);
        std::string line;
        while (std::getline(scan, line)) {
            if (line.empty() || line[0] != '#') break;
            if (line.find("scaling: unit") != std::string::npos)
                scaling = Scaling::unit;
            const auto pos = line.find("t_max = ");
            if (pos != std::string::npos)
                declared_t_max = std::strtod(line.c_str() + pos + 8, nullptr);
        }
    }
    ZeroSet zs = ingest_table_file(p, Source::ingested, scaling, tol);
    if (declared_t_max > zs.t_max()) {
        // the header certifies completeness beyond the last ordinate
        std::vector<double> v(zs.ordinates().begin(), zs.ordinates().end());
        zs = ZeroSet(std::move(v), zs.source(), zs.scaling(), zs.tol(),
                     declared_t_max, zs.verified());
    }
    return zs;
}

void write_zero_table(const ZeroSet& zs, const std::string& path,
                      const std::vector<std::pair<std::string, std::string>>& config) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "# " << kVersion << "\n";
    bool has_tmax = false;
    for (const auto& [k, v] : config) {
        out << "# " << k << " = " << v << "\n";
        if (k == "t_max") has_tmax = true;
    }
    if (!has_tmax) out << "# t_max = " << fmt_g(zs.t_max()) << "\n";
    if (zs.scaling() == Scaling::unit) out << "# scaling: unit\n";
    write_table(zs, out);
}

GapDistribution load_gaps(const std::string& spec) {
    if (spec == "lattice1") return GapDistribution::point_mass_at_one();
    std::ifstream in(spec);
    if (!in) throw std::runtime_error("cannot open gap file " + spec);
    json j;
    in >> j;
    const double g_max = j.at("g_max").get<double>();
    std::vector<double> mass(static_cast<std::size_t>(std::lround(2 * g_max)), 0.0);
    for (const auto& pair : j.at("mass")) {
        const double g = pair.at(0).get<double>();
        const double p = pair.at(1).get<double>();
        const long h = std::lround(2 * g);
        if (h < 1 || h > static_cast<long>(mass.size()))
            throw std::runtime_error("gap outside [1/2, g_max]");
        mass[h - 1] = p;
    }
    return GapDistribution(mass);
}

int run(int argc, char** argv) {
    CLI::App app{"Riemann zeta zero pair-correlation toolkit"};
    app.require_subcommand(1);

    std::string format = "csv", out_path, input, table_path;
    double tol = 1e-6, t_max = 0, T = 0, M = 8, p0 = 1.0, gmax = 4.0;
    double penalty = 0.0, jitter = 0.0, verify_tol = 1e-4, cluster_tol = 1e-8;
    std::string lambda_csv = "1", m_csv = "4", targets = "ah", gaps_spec;
    std::uint64_t seed = 1;
    std::size_t n_points = 1000;
    int k_arg = 1;
    std::string mode = "rescaled", cache_dir_flag;

    // ---- zeros ----
    auto* zeros = app.add_subcommand("zeros", "compute, ingest, or verify zero tables");
    zeros->require_subcommand(1);
    auto* zc = zeros->add_subcommand("compute", "compute ordinates up to --t-max");
    zc->add_option("--t-max", t_max, "height limit")->required();
    zc->add_option("--tol", tol, "refinement tolerance (>= 1e-9)");
    zc->add_option("--out", out_path, "output table (default stdout)");
    zc->add_option("--cache-dir", cache_dir_flag, "binary cache directory (overrides env)");

    auto* zi = zeros->add_subcommand("ingest", "validate and normalize a table");
    zi->add_option("--table", table_path, "input table")->required();
    zi->add_option("--out", out_path, "normalized output table");

    auto* zv = zeros->add_subcommand("verify", "check a table against the engine");
    zv->add_option("--table", table_path, "input table")->required();
    zv->add_option("--tol", verify_tol, "matching tolerance");

    // ---- stats ----
    auto* stats = app.add_subcommand("stats", "pair statistics of a zero set");
    stats->require_subcommand(1);
    auto add_stats_common = [&](CLI::App* c) {
        c->add_option("--input", input, "zero table or cache")->required();
        c->add_option("--T", T, "statistic height")->required();
        c->add_option("--format", format, "csv or json");
        c->add_option("--out", out_path, "output file (default stdout)");
        c->add_option("--cluster-tol", cluster_tol, "multiplicity clustering tolerance");
    };
    auto* sp = stats->add_subcommand("pairs", "pair counts N(T, lambda)");
    add_stats_common(sp);
    sp->add_option("--lambda", lambda_csv, "comma list of lambda values")->required();
    auto* sd = stats->add_subcommand("densities", "binned pair densities P_{k/2}");
    add_stats_common(sd);
    sd->add_option("--M", M, "maximum rescaled distance")->required();
    auto* sv = stats->add_subcommand("variance", "windowed second moments and D");
    add_stats_common(sv);
    sv->add_option("--lambda", lambda_csv, "comma list of lambda values")->required();
    auto* sm = stats->add_subcommand("multiplicity", "multiplicity counts");
    add_stats_common(sm);

    // ---- models ----
    auto* models = app.add_subcommand("models", "analytic predictions and identities");
    models->require_subcommand(1);
    auto* mc = models->add_subcommand("compare", "AH density prediction for one bin");
    mc->add_option("--k", k_arg, "bin index k != 0")->required();
    mc->add_option("--p0", p0, "asymptotic P0")->required();
    mc->add_option("--format", format, "csv or json");
    mc->add_option("--out", out_path, "output file");
    auto* mt = models->add_subcommand("theorem2", "averaged identity sides");
    mt->add_option("--input", input, "zero table or cache")->required();
    mt->add_option("--T", T, "statistic height (default: t_max of input)");
    mt->add_option("--M", m_csv, "comma list of even M values")->required();
    mt->add_option("--format", format, "csv or json");
    mt->add_option("--out", out_path, "output file");
    auto* ms = models->add_subcommand("sumid", "closed-form sum identity");
    ms->add_option("--M", m_csv, "comma list of M values")->required();
    ms->add_option("--format", format, "csv or json");
    ms->add_option("--out", out_path, "output file");

    // ---- synth ----
    auto* synth = app.add_subcommand("synth", "synthetic point processes");
    synth->require_subcommand(1);
    auto* sg = synth->add_subcommand("generate", "renewal or Poisson sequence");
    sg->add_option("--n", n_points, "number of points")->required();
    sg->add_option("--gaps", gaps_spec,
                   "gap law: 'lattice1', 'poisson', or a JSON file")->required();
    sg->add_option("--seed", seed, "RNG seed")->required();
    sg->add_option("--jitter", jitter, "per-gap uniform half-width");
    sg->add_option("--mode", mode, "rescaled or mapped");
    sg->add_option("--out", out_path, "output table")->required();
    auto* sf = synth->add_subcommand("fit", "fit a gap law to density targets");
    sf->add_option("--targets", targets, "'ah' (per-bin) or 'ah-sums'");
    sf->add_option("--K", k_arg, "number of target indices")->required();
    sf->add_option("--gmax", gmax, "largest gap in the support")->required();
    sf->add_option("--penalty", penalty, "penalty on mass at gaps above 1");
    sf->add_option("--out", out_path, "output gap-law JSON")->required();

    CLI11_PARSE(app, argc, argv);

    if (!cache_dir_flag.empty()) setenv("ZETAPAIR_CACHE_DIR", cache_dir_flag.c_str(), 1);

    // ---------- zeros ----------
    if (zc->parsed()) {
        const auto zeros_found = find_zeros(10.0, t_max, std::max(tol, 1e-9));
        std::vector<double> v;
        v.reserve(zeros_found.size());
        for (const auto& o : zeros_found) v.push_back(o.gamma);
        const ZeroSet zs(v, Source::computed, Scaling::raw, 1e-8, t_max, true);
        if (out_path.empty()) {
            std::cout << "# " << kVersion << "\n# command = zeros compute\n"
                      << "# t_max = " << fmt_g(t_max) << "\n# tol = "
                      << fmt_g(tol) << "\n";
            write_table(zs, std::cout);
        } else {
            write_zero_table(zs, out_path,
                             {{"command", "zeros compute"},
                              {"t_max", fmt_g(t_max)},
                              {"tol", fmt_g(tol)}});
        }
        const auto dir = cache_directory();
        if (!dir.empty()) {
            std::filesystem::create_directories(dir);
            char name[64];
            std::snprintf(name, sizeof name, "zeros_%.0f.zpz", t_max);
            save_cache(zs, dir / name);
        }
        return 0;
    }
    if (zi->parsed()) {
        const auto zs = ingest_table_file(table_path);
        if (!out_path.empty())
            write_zero_table(zs, out_path, {{"command", "zeros ingest"},
                                            {"source", table_path}});
        std::cerr << "ingested " << zs.size() << " ordinates, t_max = "
                  << fmt(zs.t_max(), 6) << "\n";
        return 0;
    }
    if (zv->parsed()) {
        const auto zs = ingest_table_file(table_path);
        const auto report = verify_against_engine(zs, verify_tol);
        std::cerr << "ingested " << report.n_ingested << ", computed "
                  << report.n_computed << ", mismatches "
                  << report.mismatches.size() << "\n";
        for (const auto& m : report.mismatches)
            std::cerr << "  mismatch at index " << m.index << ": ingested "
                      << fmt(m.ingested, 9) << ", nearest computed "
                      << fmt(m.computed, 9) << "\n";
        return report.ok() ? 0 : 2;
    }

    // ---------- stats ----------
    if (sp->parsed() || sd->parsed() || sv->parsed() || sm->parsed()) {
        const auto zs = load_input(input, cluster_tol);
        Table tab;
        tab.add_config("input", input);
        tab.add_config("T", fmt_g(T));
        tab.add_config("scaling", zs.scaling() == Scaling::unit ? "unit" : "raw");
        if (sp->parsed()) {
            tab.add_config("command", "stats pairs");
            tab.add_config("lambda", lambda_csv);
            tab.columns = {"T", "lambda", "L", "pair_count"};
            for (double lam : parse_list(lambda_csv))
                tab.rows.push_back({fmt_g(T), fmt_g(lam),
                                    fmt(zs.rescale_factor_at(T), 9),
                                    std::to_string(pair_count(zs, T, lam))});
        } else if (sd->parsed()) {
            tab.add_config("command", "stats densities");
            tab.add_config("M", fmt_g(M));
            const auto bd = bin_densities(zs, T, M);
            tab.add_config("T_stat", fmt_g(bd.T));
            tab.columns = {"k", "k_half", "count", "density", "gue_mass"};
            for (std::size_t k = 0; k < bd.densities.size(); ++k)
                tab.rows.push_back({std::to_string(k), fmt(0.5 * k, 2),
                                    std::to_string(bd.counts[k]),
                                    fmt(bd.densities[k], 9),
                                    fmt(gue_bin_mass(static_cast<int>(k), k == 0), 9)});
        } else if (sv->parsed()) {
            tab.add_config("command", "stats variance");
            tab.add_config("lambda", lambda_csv);
            tab.columns = {"T", "lambda", "count_variance", "s_variance",
                           "d_value", "abs_diff"};
            for (double lam : parse_list(lambda_csv)) {
                const auto ws = window_statistics(zs, T, lam);
                tab.rows.push_back({fmt_g(T), fmt_g(lam), fmt(ws.count_variance, 6),
                                    fmt(ws.s_variance, 6), fmt(ws.d_value, 6),
                                    fmt(std::fabs(ws.count_variance - ws.d_value), 6)});
            }
        } else {
            tab.add_config("command", "stats multiplicity");
            const auto m = multiplicity_counts(zs, T);
            tab.columns = {"T", "n", "n_star", "n_circledast", "n_simple",
                           "n_critical"};
            tab.rows.push_back({fmt_g(T), std::to_string(m.n),
                                std::to_string(m.n_star),
                                std::to_string(m.n_circledast),
                                std::to_string(m.n_simple),
                                std::to_string(m.n_critical)});
        }
        tab.write(out_path, format);
        return 0;
    }

    // ---------- models ----------
    if (mc->parsed()) {
        const auto pred = make_prediction(
            Statistic::density, ah_density_prediction(k_arg, p0),
            k_arg % 2 == 0 ? "ah-density-even" : "ah-density-odd");
        Table tab;
        tab.add_config("command", "models compare");
        tab.add_config("equation", pred.equation);
        tab.columns = {"k", "p0", "prediction"};
        tab.rows.push_back({std::to_string(k_arg), fmt_g(p0),
                            fmt(pred.value, 9)});
        tab.write(out_path, format);
        return 0;
    }
    if (mt->parsed()) {
        const auto zs = load_input(input, 1e-8);
        const double height = T > 0 ? T : zs.t_max();
        Table tab;
        tab.add_config("command", "models theorem2");
        tab.add_config("input", input);
        tab.add_config("T", fmt_g(height));
        tab.columns = {"M", "lhs", "rhs", "abs_diff", "env_sqrt_log_m",
                       "env_m2_per_l2"};
        for (double mv : parse_list(m_csv)) {
            const int Mi = static_cast<int>(mv);
            const auto bd = bin_densities(zs, height, static_cast<double>(Mi));
            const double lhs = theorem2_lhs(bd, Mi);
            const auto rhs = theorem2_rhs(bd, Mi);
            tab.rows.push_back({std::to_string(Mi), fmt(lhs, 9),
                                fmt(rhs.value, 9),
                                fmt(std::fabs(lhs - rhs.value), 9),
                                fmt(rhs.env_sqrt_log_m, 9),
                                fmt(rhs.env_m2_per_l2, 9)});
        }
        tab.write(out_path, format);
        return 0;
    }
    if (ms->parsed()) {
        Table tab;
        tab.add_config("command", "models sumid");
        tab.columns = {"M", "direct", "closed", "abs_diff"};
        for (double mv : parse_list(m_csv)) {
            const auto s = sum_identity(static_cast<long>(mv));
            tab.rows.push_back({std::to_string(static_cast<long>(mv)),
                                fmt(s.direct, 9), fmt(s.closed, 9),
                                fmt(std::fabs(s.direct - s.closed), 9)});
        }
        tab.write(out_path, format);
        return 0;
    }

    // ---------- synth ----------
    if (sg->parsed()) {
        const SyntheticMode m = mode == "mapped" ? SyntheticMode::mapped
                                                 : SyntheticMode::rescaled;
        const ZeroSet zs =
            gaps_spec == "poisson"
                ? generate_poisson(n_points, seed, m)
                : generate_ah_process({n_points, load_gaps(gaps_spec), jitter,
                                       seed, m});
        write_zero_table(zs, out_path,
                         {{"command", "synth generate"},
                          {"n", std::to_string(n_points)},
                          {"gaps", gaps_spec},
                          {"jitter", fmt_g(jitter)},
                          {"seed", std::to_string(seed)},
                          {"mode", mode}});
        return 0;
    }
    if (sf->parsed()) {
        const FitResult fit =
            targets == "ah-sums"
                ? fit_gap_distribution_to_sums(ah_sum_targets(k_arg), gmax, penalty)
                : fit_gap_distribution(ah_targets(k_arg), gmax, penalty);
        json j;
        j["version"] = kVersion;
        j["config"] = {{"command", "synth fit"}, {"targets", targets},
                       {"K", k_arg}, {"gmax", gmax}, {"penalty", penalty}};
        j["g_max"] = fit.gaps.g_max();
        j["residual_norm"] = fit.residual_norm;
        j["iterations"] = fit.iterations;
        j["mass"] = json::array();
        const auto& mass = fit.gaps.lattice_mass();
        for (std::size_t h = 0; h < mass.size(); ++h)
            j["mass"].push_back({0.5 * (h + 1), mass[h]});
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open " + out_path);
        out << j.dump(2) << "\n";
        std::cerr << "fit residual_norm = " << fmt(fit.residual_norm, 6)
                  << " after " << fit.iterations << " iterations\n";
        return 0;
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const RangeBeyondCertified& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const UnresolvedBlock& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
