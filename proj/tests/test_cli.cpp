#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + ELLIPTIC_CLI + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf;
    for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) out.append(buf.data(), n);
    const int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

std::filesystem::path scratch(const std::string& name) {
    auto d = std::filesystem::temp_directory_path() / ("elliptic_cli_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(d);
    return d;
}

}  // namespace

TEST(Cli, MomentsPolynomials) {
    const auto r = run("moments --k 2");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "k,coeff_0,coeff_1,coeff_2,coeff_3,coeff_4\n0,1,0,0,0,0\n1,1,0,1,0,0\n2,3,0,8,0,3\n");
}

TEST(Cli, MomentsValues) {
    EXPECT_EQ(run("moments --k 4 --rho 1").out, "k,value\n0,1\n1,2\n2,14\n3,132\n4,1430\n");
    EXPECT_EQ(run("moments --k 1 --rho 0.5").out, "k,value\n0,1\n1,1.25\n");
    EXPECT_EQ(run("moments --k 0").out, "k,coeff_0\n0,1\n");
}

TEST(Cli, Cumulants) {
    const auto r = run("cumulants --n 2");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out,
              "[\n  {\n    \"order\": 1,\n    \"coeffs\": []\n  },\n  {\n    \"order\": 2,\n    \"coeffs\": [\n"
              "      \"1\",\n      \"0\",\n      \"1\"\n    ]\n  }\n]\n");
    EXPECT_EQ(run("cumulants --n 2 --rho 0.5").out,
              "[\n  {\n    \"order\": 1,\n    \"value\": 0.0\n  },\n  {\n    \"order\": 2,\n    \"value\": 1.25\n  }\n]\n");
}

TEST(Cli, Identities) {
    const auto r = run("identities --n 12");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    EXPECT_NE(r.out.find("atomic_families          ok    (12 instances)"), std::string::npos);
}

TEST(Cli, Diagrams) {
    EXPECT_EQ(run("diagrams --half-size 4 --coloring u").out,
              "{\n  \"half_size\": 4,\n  \"coloring\": \"u\",\n  \"atomic\": false,\n  \"count\": 14,\n"
              "  \"partition_function\": [\n    \"3\",\n    \"0\",\n    \"8\",\n    \"0\",\n    \"3\"\n  ]\n}\n");
    EXPECT_EQ(run("diagrams --half-size 4 --atomic").out,
              "{\n  \"half_size\": 4,\n  \"coloring\": \"u\",\n  \"atomic\": true,\n  \"count\": 6,\n"
              "  \"partition_function\": [\n    \"1\",\n    \"0\",\n    \"4\",\n    \"0\",\n    \"1\"\n  ]\n}\n");
    EXPECT_EQ(run("diagrams --half-size 1 --coloring v").out,
              "{\n  \"half_size\": 1,\n  \"coloring\": \"v\",\n  \"atomic\": false,\n  \"count\": 1,\n"
              "  \"partition_function\": [\n    \"1\"\n  ]\n}\n");
}

TEST(Cli, NcPartitions) {
    EXPECT_EQ(run("ncpart --type b --n 2 --stats").out,
              "{\n  \"type\": \"b\",\n  \"n\": 2,\n  \"count\": 6,\n  \"nonzero_block_pairs\": [\n    \"1\",\n    \"4\",\n"
              "    \"1\"\n  ],\n  \"with_zero_block\": [\n    \"1\",\n    \"2\"\n  ],\n  \"without_zero_block\": [\n"
              "    \"0\",\n    \"2\",\n    \"1\"\n  ]\n}\n");
    EXPECT_EQ(run("ncpart --type a --n 5").out, "{\n  \"type\": \"a\",\n  \"n\": 5,\n  \"count\": 42\n}\n");
}

TEST(Cli, DensityMatchesSquaredSemicircle) {
    const auto svg = scratch("svg").string() + ".svg";
    const auto r = run("density --rho 1 --dist g --xmin 0.5 --xmax 3 --points 6 --svg " + svg);
    ASSERT_EQ(r.status, 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "x,density");
    int rows = 0;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        const double x = std::stod(line.substr(0, comma)), d = std::stod(line.substr(comma + 1));
        EXPECT_NEAR(d, std::sqrt(4 - x) / (4 * std::numbers::pi * std::sqrt(x)), 1e-5) << x;
        ++rows;
    }
    EXPECT_EQ(rows, 6);
    const auto body = slurp(svg);
    EXPECT_EQ(body.rfind("<svg", 0), 0u);
    EXPECT_NE(body.find("<polyline"), std::string::npos);
    std::filesystem::remove(svg);
}

TEST(Cli, DensityF) {
    const auto r = run("density --rho 0.5 --dist f --xmin 1 --xmax 2 --points 2");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(r.out.rfind("x,density\n1,", 0), 0u);
}

TEST(Cli, SimulateIsByteIdenticalAcrossThreadCounts) {
    const auto a = scratch("a"), b = scratch("b"), c = scratch("c");
    const std::string args = "simulate --size 12 --rho 0.5 --trials 5 --seed 3 --bins 10 --out ";
    ASSERT_EQ(run(args + a.string(), "ELLIPTIC_THREADS=1").status, 0);
    ASSERT_EQ(run(args + b.string(), "ELLIPTIC_THREADS=4").status, 0);
    ASSERT_EQ(run(args + c.string(), "ELLIPTIC_THREADS=0").status, 0);
    for (const char* f : {"eigenvalues.csv", "moments.csv", "histogram.csv"}) {
        const auto body = slurp(a / f);
        EXPECT_FALSE(body.empty()) << f;
        EXPECT_EQ(body, slurp(b / f)) << f;
        EXPECT_EQ(body, slurp(c / f)) << f;
    }
    EXPECT_EQ(slurp(a / "moments.csv").rfind("k,empirical,stderr,theory\n0,1,0,1\n1,", 0), 0u);
    EXPECT_EQ(slurp(a / "histogram.csv").rfind("bin_lo,bin_hi,density,theory_density\n0,", 0), 0u);
    const auto ev = slurp(a / "eigenvalues.csv");
    EXPECT_EQ(ev.rfind("trial,index,lambda\n0,0,", 0), 0u);
    EXPECT_EQ(std::count(ev.begin(), ev.end(), '\n'), 1 + 5 * 12);
    for (const auto& d : {a, b, c}) std::filesystem::remove_all(d);
}

TEST(Cli, SimulateDiagonalVarianceFlag) {
    const auto a = scratch("dv1"), b = scratch("dv2");
    ASSERT_EQ(run("simulate --size 6 --rho 0 --trials 2 --seed 1 --out " + a.string()).status, 0);
    ASSERT_EQ(run("simulate --size 6 --rho 0 --trials 2 --seed 1 --diag-variance 2 --out " + b.string()).status, 0);
    EXPECT_NE(slurp(a / "eigenvalues.csv"), slurp(b / "eigenvalues.csv"));
    std::filesystem::remove_all(a);
    std::filesystem::remove_all(b);
}

TEST(Cli, VerifyFast) {
    const auto r = run("verify --fast");
    EXPECT_EQ(r.status, 0);
    int lines = 0;
    for (std::size_t p = 0; (p = r.out.find("PASS", p)) != std::string::npos; ++p) ++lines;
    EXPECT_EQ(lines, 11);
    EXPECT_NE(r.out.find("all checks passed"), std::string::npos);
}

TEST(Cli, UsageErrorsHaveTheirOwnExitCode) {
    EXPECT_EQ(run("").status, 64);
    EXPECT_EQ(run("moments").status, 64);
    EXPECT_EQ(run("moments --k 2 --bogus").status, 64);
    EXPECT_EQ(run("moments --k 2 --rho 2").status, 64);
    EXPECT_EQ(run("ncpart --type c --n 2").status, 64);
    EXPECT_EQ(run("ncpart --type a --n 11").status, 64);
    EXPECT_EQ(run("density --rho 0.5 --xmin 0 --xmax 1 --points 3").status, 64);
    EXPECT_EQ(run("simulate --size 4 --rho 0.5 --trials 2 --seed 1 --out /proc/elliptic-nope").status, 64);
    EXPECT_EQ(run("verify --fast --full").status, 64);
    EXPECT_EQ(run("--help").status, 0);
}
