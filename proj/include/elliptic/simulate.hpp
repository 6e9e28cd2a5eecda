#pragma once

/**
 * @file simulate.hpp
 * @brief Monte Carlo run with theory columns, and its CSV renderings.
 *
 * Numbers are printed with std::to_chars (shortest round-trip form), so a
 * fixed seed gives byte-identical files whatever the worker count.
 */

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "elliptic/ellipticmc.hpp"
#include "elliptic/momentrec.hpp"
#include "elliptic/spectral.hpp"

namespace elliptic {

struct SimulationConfig {
    int size = 256;
    double rho = 0.5;
    int trials = 10;
    std::uint64_t seed = 1;
    int kmax = 4;
    int bins = 60;
    double diag_variance = 1.0;
    unsigned threads = 0;  // 0: ELLIPTIC_THREADS / hardware
};

struct SimulationResult {
    SimulationConfig config;
    std::vector<SpectrumSample> samples;
    std::vector<MomentEstimate> moments;  // k = 0..kmax
    std::vector<double> theory_moments;
    Histogram hist;
    std::vector<double> theory_heights;  // F-mass of each bin / width
};

inline void validate(const SimulationConfig& c) {
    if (c.size < 1) throw std::invalid_argument("simulate: size must be positive");
    if (!(std::abs(c.rho) <= 1.0)) throw std::invalid_argument("simulate: rho must lie in [-1, 1]");
    if (c.trials < 2) throw std::invalid_argument("simulate: need at least 2 trials");
    if (c.kmax < 0 || c.kmax > 6) throw std::invalid_argument("simulate: kmax must be in [0, 6]");
    if (c.bins < 1) throw std::invalid_argument("simulate: bins must be positive");
    if (!(c.diag_variance >= 0.0)) throw std::invalid_argument("simulate: diag variance must be non-negative");
}

/// Bin heights of F over [lo, hi] split into `bins` equal bins.
inline std::vector<double> theory_bin_heights(double rho, const Histogram& h) {
    std::vector<double> out(h.counts.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = f_interval_mass(rho, h.bin_lo(i), h.bin_hi(i)) / h.width();
    return out;
}

inline SimulationResult run_simulation(const SimulationConfig& c) {
    validate(c);
    SimulationResult r;
    r.config = c;
    const unsigned threads = c.threads ? c.threads : thread_count_from_env();
    r.samples = run_trials(c.size, c.rho, c.trials, c.seed, threads, c.diag_variance);
    r.moments = empirical_moments(r.samples, c.kmax);
    r.theory_moments = moment_values(build_uv(2 * c.kmax), c.rho, c.kmax);

    double top = 0.0;
    for (const auto& s : r.samples)
        if (!s.eigenvalues.empty()) top = std::max(top, s.eigenvalues.back());
    r.hist = histogram(r.samples, c.bins, 0.0, top > 0.0 ? 1.05 * top : 1.0);
    r.theory_heights = theory_bin_heights(c.rho, r.hist);
    return r;
}

// ---- CSV ----

inline void append_number(std::string& out, double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("to_chars failed");
    out.append(buf, end);
}

inline void append_number(std::string& out, long long v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("to_chars failed");
    out.append(buf, end);
}

inline std::string eigenvalues_csv(const SimulationResult& r) {
    std::string out = "trial,index,lambda\n";
    for (std::size_t t = 0; t < r.samples.size(); ++t) {
        const auto& ev = r.samples[t].eigenvalues;
        for (std::size_t i = 0; i < ev.size(); ++i) {
            append_number(out, static_cast<long long>(t));
            out += ',';
            append_number(out, static_cast<long long>(i));
            out += ',';
            append_number(out, ev[i]);
            out += '\n';
        }
    }
    return out;
}

inline std::string moments_csv(const SimulationResult& r) {
    std::string out = "k,empirical,stderr,theory\n";
    for (std::size_t k = 0; k < r.moments.size(); ++k) {
        append_number(out, static_cast<long long>(k));
        out += ',';
        append_number(out, r.moments[k].mean);
        out += ',';
        append_number(out, r.moments[k].stderr_);
        out += ',';
        append_number(out, r.theory_moments[k]);
        out += '\n';
    }
    return out;
}

inline std::string histogram_csv(const SimulationResult& r) {
    std::string out = "bin_lo,bin_hi,density,theory_density\n";
    for (std::size_t i = 0; i < r.hist.counts.size(); ++i) {
        append_number(out, r.hist.bin_lo(i));
        out += ',';
        append_number(out, r.hist.bin_hi(i));
        out += ',';
        append_number(out, r.hist.heights[i]);
        out += ',';
        append_number(out, r.theory_heights[i]);
        out += '\n';
    }
    return out;
}

inline void write_file(const std::filesystem::path& p, const std::string& body) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + p.string() + " for writing");
    f << body;
    if (!f) throw std::runtime_error("write failed: " + p.string());
}

inline void write_simulation(const SimulationResult& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_file(dir / "eigenvalues.csv", eigenvalues_csv(r));
    write_file(dir / "moments.csv", moments_csv(r));
    write_file(dir / "histogram.csv", histogram_csv(r));
}

}  // namespace elliptic
