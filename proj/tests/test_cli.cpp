#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// End-to-end checks of the CLI surface: exit codes, file formats, and
// byte-level determinism.  The binary path comes from the build system.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string kCli = ZETAPAIR_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / "zetapair_cli_test";
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run_cli(const std::string& args, const fs::path& dir,
            const std::string& log = "out.log") {
    const std::string cmd = kCli + " " + args + " >" + (dir / log).string() +
                            " 2>" + (dir / "err.log").string();
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

long data_lines(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    long n = 0;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') ++n;
    return n;
}

} // namespace

TEST_CASE("zeros compute writes a header plus one ordinate per line") {
    TempDir tmp;
    const auto table = tmp.path / "z100.txt";
    REQUIRE(run_cli("zeros compute --t-max 100 --out " + table.string(), tmp.path) == 0);
    CHECK(data_lines(table) == 29);
    const std::string body = slurp(table);
    CHECK(body.find("# zetapair") == 0);
    CHECK(body.find("t_max = 100") != std::string::npos);
    // the default refinement tolerance is 1e-6; only seven decimals are pinned
    CHECK(body.find("14.1347251") != std::string::npos);
}

TEST_CASE("zeros verify: clean table passes, corrupted one exits 2") {
    TempDir tmp;
    const auto table = tmp.path / "z100.txt";
    REQUIRE(run_cli("zeros compute --t-max 100 --out " + table.string(), tmp.path) == 0);
    CHECK(run_cli("zeros verify --table " + table.string(), tmp.path) == 0);

    // perturb one ordinate by 0.01
    std::vector<std::string> lines;
    {
        std::ifstream in(table);
        std::string line;
        while (std::getline(in, line)) lines.push_back(line);
    }
    for (auto& line : lines) {
        if (!line.empty() && line[0] != '#') {
            line = "14.144725141";  // first ordinate shifted
            break;
        }
    }
    const auto bad = tmp.path / "bad100.txt";
    {
        std::ofstream out(bad);
        for (const auto& line : lines) out << line << "\n";
    }
    CHECK(run_cli("zeros verify --table " + bad.string(), tmp.path) == 2);
    CHECK(slurp(tmp.path / "err.log").find("mismatch") != std::string::npos);
}

TEST_CASE("zeros ingest: descending table is rejected naming the line") {
    TempDir tmp;
    const auto bad = tmp.path / "bad.txt";
    {
        std::ofstream out(bad);
        out << "21.0\n14.1\n";
    }
    CHECK(run_cli("zeros ingest --table " + bad.string(), tmp.path) != 0);
    CHECK(slurp(tmp.path / "err.log").find("line 2") != std::string::npos);
}

TEST_CASE("stats densities: 2M+1 rows, deterministic bytes") {
    TempDir tmp;
    const auto table = tmp.path / "z1000.txt";
    REQUIRE(run_cli("zeros compute --t-max 1000 --out " + table.string(), tmp.path) == 0);
    CHECK(data_lines(table) == 649);

    const auto csv1 = tmp.path / "d1.csv";
    const auto csv2 = tmp.path / "d2.csv";
    const std::string args = "stats densities --input " + table.string() +
                             " --T 1000 --M 2 --out ";
    REQUIRE(run_cli(args + csv1.string(), tmp.path) == 0);
    REQUIRE(run_cli(args + csv2.string(), tmp.path) == 0);
    CHECK(data_lines(csv1) == 6);  // header row + 5 bins (k = 0..4)
    CHECK(slurp(csv1) == slurp(csv2));
}

TEST_CASE("stats variance: three rows with the documented columns") {
    TempDir tmp;
    const auto table = tmp.path / "z600.txt";
    REQUIRE(run_cli("zeros compute --t-max 600 --out " + table.string(), tmp.path) == 0);
    const auto csv = tmp.path / "v.csv";
    REQUIRE(run_cli("stats variance --input " + table.string() +
                        " --T 500 --lambda 1,2,4 --out " + csv.string(),
                    tmp.path) == 0);
    const std::string body = slurp(csv);
    CHECK(data_lines(csv) == 4);  // header row + 3 lambda rows
    CHECK(body.find("count_variance,s_variance,d_value,abs_diff") != std::string::npos);
}

TEST_CASE("stats: range beyond the certified table exits 3") {
    TempDir tmp;
    const auto table = tmp.path / "z100.txt";
    REQUIRE(run_cli("zeros compute --t-max 100 --out " + table.string(), tmp.path) == 0);
    CHECK(run_cli("stats pairs --input " + table.string() +
                      " --T 500 --lambda 1 --out " + (tmp.path / "p.csv").string(),
                  tmp.path) == 3);
}

TEST_CASE("models sumid and compare emit the frozen values") {
    TempDir tmp;
    REQUIRE(run_cli("models sumid --M 4", tmp.path, "sumid.csv") == 0);
    const std::string sumid = slurp(tmp.path / "sumid.csv");
    CHECK(sumid.find("10.677871133") != std::string::npos);
    CHECK(sumid.find("10.140460986") != std::string::npos);

    REQUIRE(run_cli("models compare --k 1 --p0 1", tmp.path, "cmp.csv") == 0);
    CHECK(slurp(tmp.path / "cmp.csv").find("0.297357633") != std::string::npos);
}

TEST_CASE("models theorem2 emits lhs, rhs, and envelope columns") {
    TempDir tmp;
    const auto table = tmp.path / "synth.txt";
    REQUIRE(run_cli("synth generate --n 5000 --gaps lattice1 --seed 3 --out " +
                        table.string(), tmp.path) == 0);
    const auto csv = tmp.path / "t2.csv";
    REQUIRE(run_cli("models theorem2 --input " + table.string() +
                        " --M 4,8 --out " + csv.string(), tmp.path) == 0);
    CHECK(data_lines(csv) == 3);
    CHECK(slurp(csv).find("lhs,rhs,abs_diff,env_sqrt_log_m") != std::string::npos);
}

TEST_CASE("synth generate: identical seeds give identical files") {
    TempDir tmp;
    const auto a = tmp.path / "a.txt";
    const auto b = tmp.path / "b.txt";
    const std::string args = "synth generate --n 2000 --gaps lattice1 --jitter 0.01 --seed 7 --out ";
    REQUIRE(run_cli(args + a.string(), tmp.path) == 0);
    REQUIRE(run_cli(args + b.string(), tmp.path) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).find("scaling: unit") != std::string::npos);
}

TEST_CASE("synth fit writes a gap law usable by synth generate") {
    TempDir tmp;
    const auto gaps = tmp.path / "fitted.json";
    REQUIRE(run_cli("synth fit --targets ah --K 8 --gmax 4 --out " + gaps.string(),
                    tmp.path) == 0);
    const std::string err = slurp(tmp.path / "err.log");
    CHECK(err.find("residual_norm") != std::string::npos);

    const auto table = tmp.path / "ah.txt";
    REQUIRE(run_cli("synth generate --n 3000 --gaps " + gaps.string() +
                        " --seed 11 --out " + table.string(), tmp.path) == 0);
    CHECK(data_lines(table) == 3000);
}

TEST_CASE("thread count does not change computed tables") {
    TempDir tmp;
    const auto a = tmp.path / "a.txt";
    const auto b = tmp.path / "b.txt";
    const std::string base = " zeros compute --t-max 500 --out ";
    REQUIRE(std::system(("OMP_NUM_THREADS=1 " + kCli + base + a.string() +
                         " 2>/dev/null").c_str()) == 0);
    REQUIRE(std::system(("OMP_NUM_THREADS=4 " + kCli + base + b.string() +
                         " 2>/dev/null").c_str()) == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("json output mirrors the csv rows") {
    TempDir tmp;
    REQUIRE(run_cli("models sumid --M 4 --format json", tmp.path, "sumid.json") == 0);
    const std::string body = slurp(tmp.path / "sumid.json");
    CHECK(body.find("\"rows\"") != std::string::npos);
    CHECK(body.find("\"direct\"") != std::string::npos);
    CHECK(body.find("10.677871") != std::string::npos);
}
