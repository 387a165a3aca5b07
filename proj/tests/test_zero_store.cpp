#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zetapair/zero_store.hpp"
#include "zetapair/zero_engine.hpp"
#include "zetapair/errors.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace zetapair;

namespace {
ZeroSet unit_set(std::vector<double> v, double tol = 1e-8) {
    const double t_max = v.empty() ? 100.0 : v.back();
    return ZeroSet(std::move(v), Source::synthetic, Scaling::unit, tol, t_max, true);
}

const ZeroSet& first_hundred() {
    static const ZeroSet zs = [] {
        const auto z = find_zeros(10.0, 237.0, 1e-8);
        std::vector<double> v;
        for (const auto& o : z) v.push_back(o.gamma);
        return ZeroSet(v, Source::computed, Scaling::raw, 1e-8, 237.0, true);
    }();
    return zs;
}
} // namespace

TEST_CASE("ingest: plain table with comments") {
    std::istringstream in("# first two ordinates\n14.134725\n21.022040\n");
    const auto zs = ingest_table(in);
    REQUIRE(zs.size() == 2);
    CHECK(zs[0] == 14.134725);
    CHECK(zs.source() == Source::ingested);
    CHECK(zs.t_max() == 21.022040);
    CHECK_FALSE(zs.verified());
}

TEST_CASE("ingest: descending input names the offending line") {
    std::istringstream in("21.0\n14.1\n");
    try {
        ingest_table(in);
        FAIL("expected MonotonicityError");
    } catch (const MonotonicityError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("ingest: non-numeric line names the offending line") {
    std::istringstream in("14.1\nnot-a-number\n");
    try {
        ingest_table(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("first hundred computed ordinates reach t_max near 236.5") {
    CHECK(first_hundred().size() == 100);
    CHECK(first_hundred()[99] == doctest::Approx(236.5242296).epsilon(1e-6));
}

TEST_CASE("text round-trip is bit-exact at nine decimals") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.001, 5000.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> v;
        double acc = 15.0;
        for (int i = 0; i < 50; ++i) {
            acc += u(rng) / 100.0;
            // values as they come back from the 9-decimal format
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.9f", acc);
            v.push_back(std::strtod(buf, nullptr));
        }
        const auto zs = ZeroSet(v, Source::computed, Scaling::raw, 1e-8, v.back(), false);
        std::ostringstream out;
        write_table(zs, out);
        std::istringstream in(out.str());
        const auto back = ingest_table(in);
        REQUIRE(back.size() == zs.size());
        for (std::size_t i = 0; i < zs.size(); ++i) CHECK(back[i] == zs[i]);
    }
}

TEST_CASE("binary cache round-trip and header validation") {
    const auto& zs = first_hundred();
    const auto path = std::filesystem::temp_directory_path() / "zp_cache_test.zpz";
    save_cache(zs, path);
    const auto back = load_cache(path, Source::computed, Scaling::raw, 1e-8, true);
    REQUIRE(back.size() == zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) CHECK(back[i] == zs[i]);
    CHECK(std::filesystem::file_size(path) == 16 + 8 * zs.size());

    // corrupt the magic
    {
        std::ofstream f(path, std::ios::binary | std::ios::in | std::ios::out);
        f.seekp(0);
        f.write("XXXXXXXX", 8);
    }
    CHECK_THROWS_AS(load_cache(path), ParseError);
    std::filesystem::remove(path);
}

TEST_CASE("query_range: boundary conventions") {
    const auto zs = ZeroSet({14.134725, 21.022040, 25.010858}, Source::synthetic,
                            Scaling::unit, 1e-8, 28.0, true);
    const auto one = zs.query_range(14.0, 15.0);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == 14.134725);
    // left-open: a range starting exactly at a stored ordinate excludes it
    CHECK(zs.query_range(25.010858, 28.0).empty());
    // right-closed
    CHECK(zs.query_range(20.0, 21.022040).size() == 1);
    CHECK_THROWS_AS(zs.query_range(20.0, 30.0), RangeBeyondCertified);
}

TEST_CASE("query_range: union and disjointness") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(1.0, 200.0);
    std::vector<double> v;
    double acc = 1.0;
    for (int i = 0; i < 300; ++i) { acc += u(rng) / 100.0; v.push_back(acc); }
    const auto zs = unit_set(v);
    for (int trial = 0; trial < 50; ++trial) {
        double a = u(rng), b = u(rng), c = u(rng);
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        if (!(a < b && b < c) || c > zs.t_max()) continue;
        auto left = zs.query_range(a, b);
        auto right = zs.query_range(b, c);
        auto both = zs.query_range(a, c);
        REQUIRE(left.size() + right.size() == both.size());
        left.insert(left.end(), right.begin(), right.end());
        CHECK(left == both);
    }
}

TEST_CASE("verify_against_engine") {
    SUBCASE("computed table verifies cleanly") {
        const auto report = verify_against_engine(first_hundred(), 1e-4);
        CHECK(report.mismatches.empty());
        CHECK(report.n_ingested == 100);
        CHECK(report.n_computed == 100);
        CHECK(report.ok());
    }
    SUBCASE("empty set yields an empty report") {
        const auto report = verify_against_engine(
            ZeroSet({}, Source::ingested, Scaling::raw, 1e-8, 0.0, false), 1e-4);
        CHECK(report.ok());
        CHECK(report.mismatches.empty());
    }
    SUBCASE("a single perturbed ordinate yields exactly one mismatch") {
        std::vector<double> v(first_hundred().ordinates().begin(),
                              first_hundred().ordinates().end());
        v[40] += 0.01;
        const auto zs = ZeroSet(v, Source::ingested, Scaling::raw, 1e-8,
                                v.back(), false);
        const auto report = verify_against_engine(zs, 1e-4);
        REQUIRE(report.mismatches.size() == 1);
        CHECK(report.mismatches[0].index == 40);
        CHECK_FALSE(report.ok());
    }
}

TEST_CASE("cache_directory reflects the environment variable") {
    setenv("ZETAPAIR_CACHE_DIR", "/tmp/zp_cache_env", 1);
    CHECK(cache_directory() == std::filesystem::path("/tmp/zp_cache_env"));
    unsetenv("ZETAPAIR_CACHE_DIR");
    CHECK(cache_directory().empty());
}
