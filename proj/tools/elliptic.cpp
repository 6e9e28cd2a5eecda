// elliptic: command-line front end.
//
// Exit codes: 0 success, 64 bad flags or out-of-range parameters, 70 numerical
// failure; `verify` and `identities` exit with the number of failed checks
// (capped at 63).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "elliptic/chorddiag.hpp"
#include "elliptic/exactpoly.hpp"
#include "elliptic/identities.hpp"
#include "elliptic/json_io.hpp"
#include "elliptic/momentrec.hpp"
#include "elliptic/ncpartition.hpp"
#include "elliptic/simulate.hpp"
#include "elliptic/spectral.hpp"
#include "elliptic/svg.hpp"
#include "elliptic/verify.hpp"

namespace {

using namespace elliptic;
using ojson = nlohmann::ordered_json;

constexpr int kExitUsage = 64;
constexpr int kExitNumerical = 70;
constexpr int kFailureCap = 63;

std::string number(double v) {
    std::string s;
    append_number(s, v);
    return s;
}

nlohmann::json coeffs(const IntPolynomial& p) { return nlohmann::json(p).at("coeffs"); }

int cmd_moments(int k, const std::optional<double>& rho) {
    const auto t = build_uv(2 * k);
    std::string out;
    if (rho) {
        out = "k,value\n";
        const auto vals = moment_values(t, *rho, k);
        for (int j = 0; j <= k; ++j) out += std::to_string(j) + ',' + number(vals[j]) + '\n';
    } else {
        out = "k";
        for (int c = 0; c <= 2 * k; ++c) out += ",coeff_" + std::to_string(c);
        out += '\n';
        for (int j = 0; j <= k; ++j) {
            const auto& m = moment_polynomial(t, j);
            out += std::to_string(j);
            for (int c = 0; c <= 2 * k; ++c) out += ',' + m.coeff(c).str();
            out += '\n';
        }
    }
    std::cout << out;
    return 0;
}

int cmd_cumulants(int n, const std::optional<double>& rho) {
    const int kmax = n / 2;
    const auto t = build_uv(2 * kmax);
    std::vector<IntPolynomial> even(kmax + 1);
    for (int k = 0; k <= kmax; ++k) even[k] = t.u_polys[2 * k];
    const auto c = cumulants_from_moments(symmetrized_moments(even, n), n);
    ojson arr = ojson::array();
    for (int s = 1; s <= n; ++s) {
        ojson e{{"order", s}};
        if (rho)
            e["value"] = evaluate(c[s], *rho);
        else
            e["coeffs"] = coeffs(c[s]);
        arr.push_back(std::move(e));
    }
    std::cout << arr.dump(2) << '\n';
    return 0;
}

int cmd_identities(int n) {
    const auto report = check_identities(static_cast<unsigned>(n));
    int failed = 0;
    for (Identity id : kAllIdentities) {
        int total = 0, bad = 0;
        unsigned first_bad = 0;
        for (const auto& c : report.checks) {
            if (c.id != id) continue;
            ++total;
            if (!c.passed && bad++ == 0) first_bad = c.n;
        }
        std::printf("%-24s %s  (%d instances)", std::string(identity_name(id)).c_str(), bad ? "FAIL" : "ok  ", total);
        if (bad) std::printf("  first failure at n=%u", first_bad);
        std::printf("\n");
        failed += bad > 0;
    }
    return std::min(failed, kFailureCap);
}

int cmd_diagrams(int m, const std::string& coloring, bool atomic) {
    const ColoringRule rule = coloring == "u" ? ColoringRule::U : ColoringRule::V;
    std::vector<std::uint64_t> counts(m + 1, 0);
    std::uint64_t count = 0;
    for_each_planar(m, [&](const ChordDiagram& d) {
        if (atomic && !is_atomic(d)) return;
        ++count;
        ++counts[same_color_chords(d, rule)];
    });
    IntPolynomial z(std::vector<BigInt>(counts.begin(), counts.end()));
    ojson out{{"half_size", m}, {"coloring", coloring}, {"atomic", atomic}, {"count", count},
              {"partition_function", coeffs(z)}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_ncpart(const std::string& type, int n, bool stats) {
    ojson out{{"type", type}, {"n", n}};
    if (type == "a") {
        if (n < 1 || n > kMaxNCA) throw std::out_of_range("ncpart: type a needs n in [1, 10]");
        std::uint64_t count = 0;
        for_each_nca(n, [&](const NCPartitionA&) { ++count; });
        out["count"] = count;
        if (stats) out["block_counts"] = coeffs(block_count_polynomial(n));
    } else {
        const auto s = type_b_statistics(n);
        out["count"] = s.count;
        if (stats) {
            out["nonzero_block_pairs"] = coeffs(s.all);
            out["with_zero_block"] = coeffs(s.with_zero_block);
            out["without_zero_block"] = coeffs(s.without_zero_block);
        }
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

struct DensityArgs {
    double rho = 0.5;
    std::string dist = "f";
    double xmin = 0.01, xmax = 7.0;
    int points = 200;
    double eps = 1e-6;
    std::string svg;
};

int cmd_density(const DensityArgs& a) {
    if (!(a.xmax > a.xmin)) throw std::invalid_argument("density: need xmax > xmin");
    if (a.dist == "f" && !(a.xmin > 0.0)) throw std::invalid_argument("density: --dist f needs xmin > 0");
    std::vector<double> xs(a.points);
    for (int i = 0; i < a.points; ++i)
        xs[i] = i + 1 == a.points ? a.xmax : a.xmin + (a.xmax - a.xmin) * i / (a.points - 1);
    DensityOptions opt;
    opt.eps = a.eps;
    const auto curve = a.dist == "f" ? density_f(xs, a.rho, opt) : density_g(xs, a.rho, opt);

    std::string out = "x,density\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        append_number(out, xs[i]);
        out += ',';
        if (std::isnan(curve.values[i]))
            out += "nan";
        else
            append_number(out, curve.values[i]);
        out += '\n';
    }
    std::cout << out;
    if (!a.svg.empty()) write_file(a.svg, svg_line_plot(xs, curve.values, "d_" + a.dist + ", rho = " + number(a.rho)));
    if (!curve.missing.empty()) {
        std::cerr << "elliptic density: continuation failed at " << curve.missing.size() << " point(s), first x="
                  << number(xs[curve.missing.front()]) << " (rho=" << number(a.rho) << ", eps=" << number(a.eps) << ")\n";
        return kExitNumerical;
    }
    return 0;
}

int cmd_simulate(const SimulationConfig& cfg, const std::string& out_dir) {
    validate(cfg);
    // fail before any work if the destination is unusable
    const auto probe = std::filesystem::path(out_dir) / ".elliptic-write-test";
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::ofstream(probe)) throw std::invalid_argument("simulate: output directory is not writable: " + out_dir);
    std::filesystem::remove(probe, ec);
    const auto r = run_simulation(cfg);
    write_simulation(r, out_dir);
    std::cout << moments_csv(r);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Squared elliptic random matrices: moments, free cumulants, diagrams, densities, Monte Carlo"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all subcommand help");

    int moments_k = 0;
    std::optional<double> moments_rho;
    auto* moments = app.add_subcommand("moments", "Moment polynomials M_0..M_k (CSV)");
    moments->add_option("--k", moments_k, "Highest moment order")->required()->check(CLI::Range(0, 200));
    moments->add_option("--rho", moments_rho, "Evaluate at this correlation")->check(CLI::Range(-1.0, 1.0));

    int cum_n = 0;
    std::optional<double> cum_rho;
    auto* cumulants = app.add_subcommand("cumulants", "Free cumulants c_1..c_n of the symmetrized law (JSON)");
    cumulants->add_option("--n", cum_n, "Highest cumulant order")->required()->check(CLI::Range(1, 200));
    cumulants->add_option("--rho", cum_rho, "Evaluate at this correlation")->check(CLI::Range(-1.0, 1.0));

    int id_n = 12;
    auto* identities = app.add_subcommand("identities", "Check the Narayana identities exactly up to n");
    identities->add_option("--n", id_n, "Largest index")->check(CLI::Range(1, 200));

    int half_size = 0;
    std::string coloring = "u";
    bool atomic = false;
    auto* diagrams = app.add_subcommand("diagrams", "Planar chord diagrams and their partition function (JSON)");
    diagrams->add_option("--half-size", half_size, "Number of chords m")->required()->check(CLI::Range(0, kMaxHalfSize));
    diagrams->add_option("--coloring", coloring, "Vertex coloring rule")->check(CLI::IsMember({"u", "v"}));
    diagrams->add_flag("--atomic", atomic, "Keep atomic diagrams only");

    std::string nc_type = "a";
    int nc_n = 0;
    bool nc_stats = false;
    auto* ncpart = app.add_subcommand("ncpart", "Non-crossing partitions of type A or B (JSON)");
    ncpart->add_option("--type", nc_type, "Partition type")->check(CLI::IsMember({"a", "b"}));
    ncpart->add_option("--n", nc_n, "Ground set size")->required()->check(CLI::PositiveNumber);
    ncpart->add_flag("--stats", nc_stats, "Include block statistics");

    DensityArgs dargs;
    auto* density = app.add_subcommand("density", "Spectral density on a grid (CSV)");
    density->add_option("--rho", dargs.rho, "Correlation")->required()->check(CLI::Range(-1.0, 1.0));
    density->add_option("--dist", dargs.dist, "f: squared singular values, g: symmetrized law")
        ->check(CLI::IsMember({"f", "g"}));
    density->add_option("--xmin", dargs.xmin, "Grid start")->required();
    density->add_option("--xmax", dargs.xmax, "Grid end")->required();
    density->add_option("--points", dargs.points, "Grid points")->required()->check(CLI::Range(2, 1000000));
    density->add_option("--eps", dargs.eps, "Distance above the real axis")->check(CLI::PositiveNumber);
    density->add_option("--svg", dargs.svg, "Also write a line plot here");

    SimulationConfig sim;
    std::string out_dir = ".";
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo spectra with theory columns (CSV files)");
    simulate->add_option("--size", sim.size, "Matrix size N")->required()->check(CLI::Range(1, 4096));
    simulate->add_option("--rho", sim.rho, "Correlation")->required()->check(CLI::Range(-1.0, 1.0));
    simulate->add_option("--trials", sim.trials, "Number of matrices")->required()->check(CLI::Range(2, 100000000));
    simulate->add_option("--seed", sim.seed, "Run seed")->required();
    simulate->add_option("--kmax", sim.kmax, "Highest moment")->check(CLI::Range(0, 6));
    simulate->add_option("--bins", sim.bins, "Histogram bins")->check(CLI::Range(1, 100000));
    simulate->add_option("--out", out_dir, "Output directory");
    simulate->add_option("--diag-variance", sim.diag_variance, "Variance of the diagonal entries")
        ->check(CLI::NonNegativeNumber);

    bool fast = false, full = false;
    auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
    auto* fast_opt = verify->add_flag("--fast", fast, "Skip the large Monte Carlo run");
    verify->add_flag("--full", full, "Run everything (default)")->excludes(fast_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        if (*moments) return cmd_moments(moments_k, moments_rho);
        if (*cumulants) return cmd_cumulants(cum_n, cum_rho);
        if (*identities) return cmd_identities(id_n);
        if (*diagrams) return cmd_diagrams(half_size, coloring, atomic);
        if (*ncpart) return cmd_ncpart(nc_type, nc_n, nc_stats);
        if (*density) return cmd_density(dargs);
        if (*simulate) return cmd_simulate(sim, out_dir);
        if (*verify) {
            const int failures = run_acceptance(fast ? VerifyMode::Fast : VerifyMode::Full, std::cout);
            return std::min(failures, kFailureCap);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "elliptic: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "elliptic: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "elliptic " << name << ": numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}
