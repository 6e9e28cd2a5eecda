#pragma once

/**
 * @file verify.hpp
 * @brief The acceptance suite, shared by `elliptic verify` and the
 *        acceptance test binary.
 *
 * Each check returns one row: id, short name, pass/fail/skip, a detail
 * string with the measured figure of merit, and wall time.
 */

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "elliptic/chorddiag.hpp"
#include "elliptic/ellipticmc.hpp"
#include "elliptic/exactpoly.hpp"
#include "elliptic/identities.hpp"
#include "elliptic/momentrec.hpp"
#include "elliptic/ncpartition.hpp"
#include "elliptic/simulate.hpp"
#include "elliptic/spectral.hpp"

namespace elliptic {

enum class VerifyMode { Fast, Full };

enum class CheckStatus { Pass, Fail, Skip };

struct CheckResult {
    int id = 0;
    std::string name;
    CheckStatus status = CheckStatus::Fail;
    std::string detail;
    double seconds = 0.0;
};

namespace verify_detail {

inline std::string fmt(double v, int prec = 3) {
    std::ostringstream os;
    os << std::setprecision(prec) << v;
    return os.str();
}

struct Outcome {
    bool passed;
    std::string detail;
};

inline Outcome moment_table() {
    const auto t = build_uv(16);
    const std::vector<IntPolynomial> expected = {
        {1, 0, 1},
        {3, 0, 8, 0, 3},
        {12, 0, 54, 0, 54, 0, 12},
        {55, 0, 352, 0, 616, 0, 352, 0, 55},
    };
    for (int k = 1; k <= 4; ++k)
        if (moment_polynomial(t, k) != expected[k - 1])
            return {false, "M_" + std::to_string(k) + " = " + moment_polynomial(t, k).to_string('r')};
    return {true, "M_1..M_4 exact"};
}

inline Outcome endpoint_sequences() {
    const auto t = build_uv(20);
    for (unsigned k = 0; k <= 10; ++k) {
        const auto& m = t.u_polys[2 * k];
        const BigInt at0 = evaluate_exact(m, 0), at1 = evaluate_exact(m, 1);
        if (at0 != binomial(3 * k, k) / (2 * k + 1))
            return {false, "M_" + std::to_string(k) + "(0) = " + at0.str()};
        if (at1 != binomial(4 * k, 2 * k) / (2 * k + 1))
            return {false, "M_" + std::to_string(k) + "(1) = " + at1.str()};
    }
    return {true, "k <= 10 exact at rho = 0, 1"};
}

inline Outcome diagram_oracle() {
    const auto t = build_uv(10);
    for (int k = 1; k <= 5; ++k)
        if (partition_function(2 * k, ColoringRule::U) != t.u_polys[2 * k])
            return {false, "mismatch at k = " + std::to_string(k)};
    return {true, "k <= 5 exact"};
}

inline Outcome cumulant_pipeline() {
    const int nmax = 12;
    const auto t = build_uv(2 * nmax);
    std::vector<IntPolynomial> even(nmax + 1);
    for (int k = 0; k <= nmax; ++k) even[k] = t.u_polys[2 * k];
    const auto c = cumulants_from_moments(symmetrized_moments(even, 2 * nmax), 2 * nmax);
    for (int s = 1; s <= 2 * nmax; ++s) {
        const IntPolynomial want = s % 2 ? IntPolynomial{} : substitute_square(narayana_b(s / 2));
        if (c[s] != want) return {false, "c_" + std::to_string(s) + " = " + c[s].to_string('r')};
    }
    return {true, "c_1..c_24 exact, odd ones vanish"};
}

inline Outcome atomic_diagrams() {
    for (int n = 1; n <= 4; ++n)
        if (atomic_partition_function(n) != substitute_square(narayana_b(n)))
            return {false, "mismatch at n = " + std::to_string(n) + ": " + atomic_partition_function(n).to_string('r')};
    return {true, "n <= 4 exact"};
}

inline Outcome identity_suite() {
    const auto report = check_identities(12);
    const auto bad = report.failures();
    if (!bad.empty())
        return {false, std::string(identity_name(bad.front().id)) + " fails at n = " + std::to_string(bad.front().n)};
    return {true, std::to_string(report.checks.size()) + " instances exact"};
}

inline Outcome combinatorial_counts() {
    for (int n = 1; n <= 8; ++n)
        if (BigInt(enumerate_nca(n).size()) != catalan(n)) return {false, "|NC(" + std::to_string(n) + ")|"};
    for (int n = 1; n <= 6; ++n)
        if (BigInt(enumerate_ncb(n).size()) != binomial(2 * n, n)) return {false, "|NC^B(" + std::to_string(n) + ")|"};
    for (int n = 1; n <= 5; ++n) {
        std::map<NCPartitionA, int> fiber;
        for (const auto& p : enumerate_ncb(n)) ++fiber[abs_map(p)];
        if (static_cast<int>(fiber.size()) != static_cast<int>(enumerate_nca(n).size()))
            return {false, "abs map not onto at n = " + std::to_string(n)};
        for (const auto& [k, v] : fiber)
            if (v != n + 1) return {false, "abs fiber of size " + std::to_string(v) + " at n = " + std::to_string(n)};
    }
    for (int n = 1; n <= 7; ++n)
        for (const auto& p : enumerate_nca(n))
            if (static_cast<int>(p.block_count() + kreweras(p).block_count()) != n + 1)
                return {false, "Kreweras block count at n = " + std::to_string(n)};
    return {true, "Catalan, central binomial, fibers n+1, |K| complement"};
}

inline Outcome transform_consistency() {
    double worst = 0.0;
    for (double rho : {0.0, 0.5, 0.9, 1.0}) {
        CounterRng rng(mix64(0x5eedULL + static_cast<std::uint64_t>(rho * 1000)));
        for (int i = 0; i < 500; ++i) {
            const double x = -6.0 + 12.0 * rng.uniform();
            const double y = std::pow(10.0, -3.0 + 4.0 * rng.uniform());
            const cplx z(x, y);
            const cplx s = cauchy_g(z, rho).s;
            worst = std::max(worst, std::abs(r_transform(s, rho) + 1.0 / s - z));
        }
    }
    if (worst > 1e-8) return {false, "max |R(s)+1/s-z| = " + fmt(worst)};
    double worst_series = 0.0;
    for (double rho : {0.0, 0.5}) {
        const std::vector<double> expected = {1.0, 1.0 + rho * rho, 3.0 + 8.0 * rho * rho + 3.0 * std::pow(rho, 4)};
        for (const auto& e : series_moments_check(rho, 2, expected))
            if (e.order == 2 || e.order == 4) worst_series = std::max(worst_series, e.error);
    }
    const bool ok = worst_series <= 1e-6;
    return {ok, "max |R(s)+1/s-z| = " + fmt(worst) + ", series moment rel err = " + fmt(worst_series)};
}

inline double semicircle_pushforward_f(double x) {
    return std::sqrt(4.0 - std::sqrt(x)) / (4.0 * std::numbers::pi * std::pow(x, 0.75));
}

inline Outcome density_checks() {
    std::ostringstream os;
    bool ok = true;
    for (double rho : {0.0, 0.5, 0.9}) {
        const double mass = f_moment(rho, 0), mean = f_moment(rho, 1);
        const bool good = std::abs(mass - 1.0) <= 1e-3 && std::abs(mean - (1.0 + rho * rho)) <= 1e-3;
        ok = ok && good;
        os << "rho=" << rho << " mass " << fmt(mass, 7) << " mean " << fmt(mean, 7) << "; ";
    }
    const double edge = support_edge_f(0.0);
    ok = ok && std::abs(edge - 6.75) <= 0.01;
    os << "edge(0) " << fmt(edge, 6) << "; ";
    double worst = 0.0;
    for (int i = 0; i <= 40; ++i) {
        const double x = 0.05 + (15.5 - 0.05) * i / 40.0;
        worst = std::max(worst, std::abs(density_f_at(x, 1.0) - semicircle_pushforward_f(x)));
    }
    ok = ok && worst <= 1e-4;
    os << "rho=1 pointwise " << fmt(worst);
    return {ok, os.str()};
}

inline Outcome monte_carlo(VerifyMode mode, bool& skipped) {
    std::ostringstream os;
    bool ok = true;

    // finite-N Wick oracle
    {
        const int trials = 100000;
        const auto samples = run_trials(4, 0.3, trials, 20240601ULL, thread_count_from_env());
        const auto m = empirical_moments(samples, 1);
        const double exact = exact_expected_trace(1, 4, 0.3);
        const double z = std::abs(m[1].mean - exact) / m[1].stderr_;
        ok = ok && z <= 4.0;
        os << "n=4 trace " << fmt(m[1].mean, 6) << " vs " << fmt(exact, 6) << " (" << fmt(z, 2) << " sigma)";
    }
    if (mode == VerifyMode::Fast) {
        skipped = false;
        os << "; n=512 run skipped (--fast)";
        return {ok, os.str()};
    }
    SimulationConfig cfg;
    cfg.size = 512;
    cfg.rho = 0.5;
    cfg.trials = 20;
    cfg.seed = 7;
    cfg.kmax = 2;
    cfg.bins = 60;
    const auto r = run_simulation(cfg);
    for (int k = 1; k <= 2; ++k) {
        const double emp = r.moments[k].mean, th = r.theory_moments[k], se = r.moments[k].stderr_;
        const double z = std::abs(emp - th) / se, rel = std::abs(emp - th) / th;
        ok = ok && z <= 4.0 && rel <= 0.02;
        os << "; M" << k << " " << fmt(emp, 6) << " vs " << fmt(th, 6) << " (" << fmt(z, 2) << " se, " << fmt(100 * rel, 2)
           << "%)";
    }
    const double tv = total_variation(r.hist, r.theory_heights);
    ok = ok && tv <= 0.08;
    os << "; TV " << fmt(tv);
    return {ok, os.str()};
}

inline Outcome determinism(VerifyMode mode) {
    SimulationConfig cfg;
    cfg.size = mode == VerifyMode::Fast ? 24 : 64;
    cfg.rho = -0.4;
    cfg.trials = 6;
    cfg.seed = 99;
    cfg.bins = 20;
    auto render = [&](unsigned threads) {
        cfg.threads = threads;
        const auto r = run_simulation(cfg);
        return eigenvalues_csv(r) + moments_csv(r) + histogram_csv(r);
    };
    const std::string a = render(1), b = render(1), c = render(3), d = render(8);
    const bool ok = a == b && a == c && a == d;
    return {ok, ok ? "byte-identical over 2 runs and 1/3/8 workers" : "CSV output differs"};
}

}  // namespace verify_detail

struct CheckSpec {
    int id;
    std::string name;
    std::function<verify_detail::Outcome(VerifyMode, bool&)> run;
};

inline std::vector<CheckSpec> acceptance_checks() {
    using namespace verify_detail;
    auto plain = [](Outcome (*f)()) { return [f](VerifyMode, bool&) { return f(); }; };
    return {
        {1, "moment table", plain(moment_table)},
        {2, "endpoint sequences", plain(endpoint_sequences)},
        {3, "diagram oracle", plain(diagram_oracle)},
        {4, "type-B cumulants", plain(cumulant_pipeline)},
        {5, "atomic diagrams", plain(atomic_diagrams)},
        {6, "identity suite", plain(identity_suite)},
        {7, "combinatorial counts", plain(combinatorial_counts)},
        {8, "transform consistency", plain(transform_consistency)},
        {9, "density", plain(density_checks)},
        {10, "monte carlo", [](VerifyMode m, bool& skipped) { return monte_carlo(m, skipped); }},
        {11, "determinism", [](VerifyMode m, bool&) { return determinism(m); }},
    };
}

inline CheckResult run_check(const CheckSpec& spec, VerifyMode mode) {
    CheckResult r;
    r.id = spec.id;
    r.name = spec.name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        bool skipped = false;
        const auto o = spec.run(mode, skipped);
        r.status = skipped ? CheckStatus::Skip : (o.passed ? CheckStatus::Pass : CheckStatus::Fail);
        r.detail = o.detail;
    } catch (const std::exception& e) {
        r.status = CheckStatus::Fail;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline std::string status_label(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "PASS";
        case CheckStatus::Fail: return "FAIL";
        case CheckStatus::Skip: return "SKIP";
    }
    return "?";
}

inline std::string format_row(const CheckResult& r) {
    char head[64];
    std::snprintf(head, sizeof head, "%s  %2d  %-22s %8.2fs  ", status_label(r.status).c_str(), r.id, r.name.c_str(),
                  r.seconds);
    return head + r.detail;
}

/// Runs every check, streaming one row per check. Returns the failure count.
inline int run_acceptance(VerifyMode mode, std::ostream& os) {
    int failures = 0;
    for (const auto& spec : acceptance_checks()) {
        const auto r = run_check(spec, mode);
        failures += r.status == CheckStatus::Fail;
        os << format_row(r) << '\n' << std::flush;
    }
    os << (failures ? std::to_string(failures) + " check(s) failed" : std::string("all checks passed")) << '\n';
    return failures;
}

}  // namespace elliptic
