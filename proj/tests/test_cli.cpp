#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "fixtures.hpp"
#include "sievelab/bounds.hpp"
#include "sievelab/csv.hpp"
#include "sievelab_cli.hpp"

using namespace sievelab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("sievelab_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    fs::path file(const std::string& name, const std::string& contents) const {
        const fs::path p = path / name;
        std::ofstream out(p);
        out << contents;
        return p;
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const std::string kBoundConfig =
    "[family]\n"
    "kind = identity\n"
    "[model]\n"
    "m_choice = T\n"
    "[function]\n"
    "kind = one\n"
    "[grid]\n"
    "t = 100 1000\n"
    "[limits]\n"
    "prime_table = 20000\n";

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("bound subcommand writes a verifiable CSV") {
    TempDir dir;
    const auto cfg = dir.file("exp.cfg", kBoundConfig);
    const auto out = dir.path / "bound.csv";
    const int rc = cli::run({"bound", "--config", cfg.string(), "--out", out.string()});
    REQUIRE(rc == 0);

    const std::string body = slurp(out);
    std::istringstream lines(body);
    std::string line;
    std::getline(lines, line);
    CHECK(line.rfind("# config", 0) == 0);
    std::getline(lines, line);
    CHECK(line ==
          "T,M,lhs,rhs_upper,ratio_upper,rhs_lower,ratio_lower,case_i,case_ii,case_iii,case_iv");

    // Every emitted number must be reproducible from the logged parameters.
    EquidistModel model = default_identity_model();
    model.m_choice = MChoice::Scale;
    const auto fam = make_identity_family(model);
    const PrimeTables tables(20'000);
    BoundScanOptions options;
    options.growth_params = GrowthParams{2, 1, 2};
    for (double T : {100.0, 1000.0}) {
        const auto r = bound_scan_point(fam, ArithmeticFunction::one(), T, tables, options);
        std::getline(lines, line);
        const std::string expected =
            csv::format(r.T) + "," + csv::format(r.M) + "," + csv::format(r.lhs) + "," +
            csv::format(r.rhs_upper) + "," + csv::format(r.ratio_upper) + "," +
            csv::format(*r.rhs_lower) + "," + csv::format(*r.ratio_lower) + "," +
            csv::format(r.case_contributions[0]) + "," + csv::format(r.case_contributions[1]) +
            "," + csv::format(r.case_contributions[2]) + "," +
            csv::format(r.case_contributions[3]);
        CHECK(line == expected);
    }
}

TEST_CASE("bound output is byte-identical across runs and thread counts") {
    TempDir dir;
    const auto cfg = dir.file("exp.cfg", kBoundConfig);
    const auto out1 = dir.path / "a.csv";
    const auto out2 = dir.path / "b.csv";
    const auto out3 = dir.path / "c.csv";
    REQUIRE(cli::run({"bound", "--config", cfg.string(), "--out", out1.string()}) == 0);
    REQUIRE(cli::run({"bound", "--config", cfg.string(), "--out", out2.string()}) == 0);
    REQUIRE(cli::run({"bound", "--config", cfg.string(), "--out", out3.string(), "--threads",
                      "4"}) == 0);
    CHECK(slurp(out1) == slurp(out2));
    CHECK(slurp(out1) == slurp(out3));
}

TEST_CASE("cases subcommand shares the bound scan") {
    TempDir dir;
    const auto cfg = dir.file("exp.cfg", kBoundConfig);
    const auto out = dir.path / "cases.csv";
    REQUIRE(cli::run({"cases", "--config", cfg.string(), "--out", out.string()}) == 0);
    const std::string body = slurp(out);
    CHECK(body.find("T,case,contribution,share") != std::string::npos);
    CHECK(body.find("\n100,i,100,1\n") != std::string::npos);
}

TEST_CASE("sieve-verify with z = 2 dumps only the unit weight") {
    TempDir dir;
    const auto cfg = dir.file("sieve.cfg",
                              "[sieve]\n"
                              "kappa = 1\n"
                              "y = 50\n"
                              "z = 2\n"
                              "side = upper\n"
                              "check_limit = 100\n"
                              "[limits]\n"
                              "prime_table = 2000\n");
    const auto out = dir.path / "sieve.csv";
    REQUIRE(cli::run({"sieve-verify", "--config", cfg.string(), "--out", out.string()}) == 0);
    const std::string body = slurp(out);
    CHECK(body.find("m,lambda,side\n1,1,upper\n") != std::string::npos);
    std::istringstream lines(body);
    std::string line;
    int data_rows = 0;
    while (std::getline(lines, line))
        if (!line.empty() && line[0] != '#' && line[0] != 'm') ++data_rows;
    CHECK(data_rows == 1);
}

TEST_CASE("equidist subcommand emits the documented columns") {
    TempDir dir;
    const auto cfg = dir.file("eq.cfg",
                              "[family]\n"
                              "kind = identity\n"
                              "[model]\n"
                              "m_choice = T\n"
                              "[grid]\n"
                              "t = 1000\n"
                              "[limits]\n"
                              "prime_table = 20000\n"
                              "d_limit = 10\n");
    const auto out = dir.path / "eq.csv";
    REQUIRE(cli::run({"equidist", "--config", cfg.string(), "--out", out.string()}) == 0);
    const std::string body = slurp(out);
    CHECK(body.find("d,C_d,h_d_M,residual,score") != std::string::npos);
    CHECK(body.find("\n1,1000,1000,0,0\n") != std::string::npos);
}

TEST_CASE("class-check covers density, growth and positivity") {
    TempDir dir;
    const auto cfg = dir.file("cc.cfg",
                              "[density]\n"
                              "kind = inverse-linear\n"
                              "[function]\n"
                              "kind = tau\n"
                              "[limits]\n"
                              "prime_table = 20000\n"
                              "prime_limit = 1000\n"
                              "growth_check_limit = 2000\n");
    const auto out = dir.path / "cc.csv";
    REQUIRE(cli::run({"class-check", "--config", cfg.string(), "--out", out.string()}) == 0);
    const std::string body = slurp(out);
    CHECK(body.find("product_growth,1,") != std::string::npos);
    CHECK(body.find("prime_bound,1,") != std::string::npos);
    CHECK(body.find("exponent_decay,1,") != std::string::npos);
    CHECK(body.find("submultiplicative_growth,1,") != std::string::npos);
    CHECK(body.find("lower_positivity,1,1,") != std::string::npos);
}

TEST_CASE("lemma subcommand sweeps the requested parameter") {
    TempDir dir;
    const auto cfg = dir.file("lm.cfg",
                              "[function]\n"
                              "kind = one\n"
                              "[lemma]\n"
                              "upsilon = 1000\n"
                              "psi = 100\n"
                              "a_max = 100000\n"
                              "sweep = upsilon\n"
                              "values = 1000 10000\n"
                              "[limits]\n"
                              "prime_table = 20000\n");
    const auto out = dir.path / "lm.csv";
    REQUIRE(cli::run({"lemma", "2.4", "--config", cfg.string(), "--out", out.string()}) == 0);
    const std::string body = slurp(out);
    CHECK(body.find("parameter,lhs,rhs_envelope,implied_constant,truncation_error") !=
          std::string::npos);
    CHECK(body.find("\n1000,") != std::string::npos);
    CHECK(body.find("\n10000,") != std::string::npos);
}

TEST_CASE("--set overrides config values and lands in the metadata") {
    TempDir dir;
    const auto cfg = dir.file("exp.cfg", kBoundConfig);
    const auto out = dir.path / "bound.csv";
    REQUIRE(cli::run({"bound", "--config", cfg.string(), "--out", out.string(), "--set",
                      "grid.t=100 200", "--set", "function.kind=tau"}) == 0);
    const std::string body = slurp(out);
    CHECK(body.find("t=100 200") != std::string::npos);
    CHECK(body.find("kind=tau") != std::string::npos);
    CHECK(body.find("\n200,") != std::string::npos);

    CHECK(cli::run({"bound", "--config", cfg.string(), "--set", "nonsense"}) == 2);
}

TEST_CASE("a stalled family fails the increasing-weight check") {
    TempDir dir;
    // The box [0, 0.001] holds exactly the origin for every T below 1000, so
    // the support never grows along the grid.
    const auto cfg = dir.file("flat.cfg",
                              "[family]\n"
                              "kind = polynomial-box\n"
                              "poly = 1,1;5,0\n"
                              "dim = 1\n"
                              "box = 0:0.001\n"
                              "[model]\n"
                              "b_tilde = 10\n"
                              "[grid]\n"
                              "t = 10 20\n"
                              "[limits]\n"
                              "prime_table = 2000\n");
    CHECK(cli::run({"bound", "--config", cfg.string(),
                    "--out", (dir.path / "x.csv").string()}) == 1);
}

TEST_CASE("polynomial family with residue density runs end to end") {
    TempDir dir;
    const auto cfg = dir.file("poly.cfg",
                              "[family]\n"
                              "kind = polynomial-box\n"
                              "poly = 1,2;1,0\n"
                              "dim = 1\n"
                              "box = 0:1\n"
                              "[density]\n"
                              "kind = residue\n"
                              "B = 2\n"
                              "[model]\n"
                              "alpha = 2\n"
                              "b_tilde = 2\n"
                              "[function]\n"
                              "kind = one\n"
                              "[grid]\n"
                              "t = 50 100\n"
                              "[limits]\n"
                              "prime_table = 20000\n");
    const auto out = dir.path / "poly.csv";
    REQUIRE(cli::run({"bound", "--config", cfg.string(), "--out", out.string()}) == 0);
    const std::string body = slurp(out);
    CHECK(body.find("\n50,") != std::string::npos);
    CHECK(body.find("\n100,") != std::string::npos);
}

TEST_CASE("config errors exit with status 2") {
    TempDir dir;
    const auto bad_model = dir.file("bad.cfg",
                                    "[family]\n"
                                    "kind = identity\n"
                                    "[model]\n"
                                    "theta = 1.5\n"
                                    "[grid]\n"
                                    "t = 100\n");
    CHECK(cli::run({"bound", "--config", bad_model.string()}) == 2);

    const auto bad_grid = dir.file("grid.cfg",
                                   "[family]\n"
                                   "kind = identity\n"
                                   "[grid]\n"
                                   "t = 100 100\n");
    CHECK(cli::run({"bound", "--config", bad_grid.string()}) == 2);

    CHECK(cli::run({"bound", "--config", (dir.path / "missing.cfg").string()}) == 2);
}

TEST_CASE("domain errors exit with status 1") {
    TempDir dir;
    // d_limit above M^theta violates the diagnostics precondition.
    const auto cfg = dir.file("dom.cfg",
                              "[family]\n"
                              "kind = identity\n"
                              "[model]\n"
                              "m_choice = T\n"
                              "[grid]\n"
                              "t = 100\n"
                              "[limits]\n"
                              "prime_table = 2000\n"
                              "d_limit = 50\n");
    CHECK(cli::run({"equidist", "--config", cfg.string()}) == 1);
}

TEST_SUITE_END();
