#pragma once

/**
 * @file ellipticmc.hpp
 * @brief Monte Carlo for Gaussian elliptic matrices and the spectrum of
 *        W = N^-2 X^2 (X^2)^T.
 *
 * Randomness is counter based: every trial owns a splitmix64 stream whose
 * key is a hash of (seed, trial index), so results depend only on those two
 * numbers and never on scheduling. Normals come from Box-Muller.
 */

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace elliptic {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// splitmix64 written as a pure function of (key, counter).
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    std::uint64_t next() { return mix64(key_ + kGamma * ++counter_); }

    // uniform on [0, 1) with 53 random bits
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    std::uint64_t counter() const { return counter_; }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t key) : rng_(key) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - rng_.uniform();  // (0, 1]
        const double u2 = rng_.uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

private:
    CounterRng rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Seed of trial t derived from the run seed.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    return mix64(seed ^ mix64(trial + 0x632be59bd9b4e019ULL));
}

struct Matrix {
    std::size_t n = 0;
    std::vector<double> a;  // row-major

    Matrix() = default;
    explicit Matrix(std::size_t size) : n(size), a(size * size, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    double trace() const {
        double t = 0.0;
        for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius() const {
        double s = 0.0;
        for (double x : a) s += x * x;
        return std::sqrt(s);
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

inline Matrix multiply(const Matrix& A, const Matrix& B) {
    const std::size_t n = A.n;
    Matrix C(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = A(i, k);
            const double* brow = &B.a[k * n];
            double* crow = &C.a[i * n];
            for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    return C;
}

/// A * B^T
inline Matrix multiply_transposed(const Matrix& A, const Matrix& B) {
    const std::size_t n = A.n;
    Matrix C(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double* ar = &A.a[i * n];
            const double* br = &B.a[j * n];
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += ar[k] * br[k];
            C(i, j) = s;
        }
    return C;
}

struct EllipticMatrixSample {
    Matrix entries;
    int n = 0;
    double rho = 0.0;
    std::uint64_t seed = 0;
};

/**
 * For i < j: X_ij = Z1, X_ji = rho Z1 + sqrt(1 - rho^2) Z2. The diagonal is
 * N(0, diag_variance). Pairs are drawn row by row, then the diagonal.
 */
inline EllipticMatrixSample sample_elliptic(int n, double rho, std::uint64_t seed, double diag_variance = 1.0) {
    if (n < 1) throw std::invalid_argument("sample_elliptic: n must be positive");
    if (!(std::abs(rho) <= 1.0)) throw std::invalid_argument("sample_elliptic: |rho| must be <= 1");
    if (!(diag_variance >= 0.0)) throw std::invalid_argument("sample_elliptic: diagonal variance must be >= 0");
    EllipticMatrixSample s{Matrix(static_cast<std::size_t>(n)), n, rho, seed};
    GaussianStream g(mix64(seed));
    const double comp = std::sqrt(1.0 - rho * rho);
    auto& X = s.entries;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double z1 = g.next();
            const double z2 = g.next();
            X(i, j) = z1;
            X(j, i) = comp == 0.0 ? rho * z1 : rho * z1 + comp * z2;
        }
    const double sd = std::sqrt(diag_variance);
    for (int i = 0; i < n; ++i) X(i, i) = sd * g.next();
    return s;
}

/// N^-2 X^2 (X^2)^T
inline Matrix form_w(const EllipticMatrixSample& x) {
    const Matrix y = multiply(x.entries, x.entries);
    Matrix w = multiply_transposed(y, y);
    const double scale = 1.0 / (static_cast<double>(x.n) * x.n);
    for (double& v : w.a) v *= scale;
    return w;
}

class eigensolver_error : public std::runtime_error {
public:
    eigensolver_error(const std::string& what, std::uint64_t seed) : std::runtime_error(what), seed_(seed) {}
    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

struct SymmetricEigen {
    std::vector<double> values;  // ascending
    Matrix vectors;              // row i is the eigenvector of values[i] (empty unless requested)
    int sweeps = 0;
};

struct JacobiOptions {
    int max_sweeps = 30;
    double relative_threshold = 1e-12;  // stop when off(A) <= threshold * ||A||_F
};

/**
 * Cyclic Jacobi for a symmetric matrix. Each sweep rotates every (p, q)
 * with p < q once; rows are updated in place and columns restored by
 * symmetry.
 */
inline SymmetricEigen symmetric_eigen(Matrix A, bool want_vectors = false, const JacobiOptions& opt = {},
                                      std::uint64_t seed_for_errors = 0) {
    const std::size_t n = A.n;
    SymmetricEigen out;
    Matrix V;
    if (want_vectors) {
        V = Matrix(n);
        for (std::size_t i = 0; i < n; ++i) V(i, i) = 1.0;
    }
    const double norm = A.frobenius();
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * A(i, j) * A(i, j);
        return std::sqrt(s);
    };

    // pivots below this cannot keep off(A) above the stopping threshold on their own
    const double skip = opt.relative_threshold * norm / static_cast<double>(std::max<std::size_t>(n, 1));
    bool converged = norm == 0.0 || off_norm() <= opt.relative_threshold * norm;
    while (!converged) {
        if (out.sweeps >= opt.max_sweeps)
            throw eigensolver_error("symmetric_eigen: no convergence after " + std::to_string(opt.max_sweeps) +
                                        " sweeps (seed " + std::to_string(seed_for_errors) + ")",
                                    seed_for_errors);
        ++out.sweeps;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (std::abs(apq) < skip) continue;
                const double app = A(p, p), aqq = A(q, q);
                if (std::abs(apq) < 1e-18 * std::sqrt(std::abs(app * aqq))) {
                    A(p, q) = A(q, p) = 0.0;
                    continue;
                }
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                double* rp = &A.a[p * n];
                double* rq = &A.a[q * n];
                for (std::size_t k = 0; k < n; ++k) {
                    const double xp = rp[k], xq = rq[k];
                    rp[k] = c * xp - s * xq;
                    rq[k] = s * xp + c * xq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    A.a[k * n + p] = rp[k];
                    A.a[k * n + q] = rq[k];
                }
                A(p, p) = app - t * apq;
                A(q, q) = aqq + t * apq;
                A(p, q) = A(q, p) = 0.0;

                if (want_vectors) {
                    double* vp = &V.a[p * n];
                    double* vq = &V.a[q * n];
                    for (std::size_t k = 0; k < n; ++k) {
                        const double xp = vp[k], xq = vq[k];
                        vp[k] = c * xp - s * xq;
                        vq[k] = s * xp + c * xq;
                    }
                }
            }
        }
        converged = off_norm() <= opt.relative_threshold * norm;
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return A(i, i) < A(j, j); });
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = A(order[i], order[i]);
    if (want_vectors) {
        out.vectors = Matrix(n);
        for (std::size_t i = 0; i < n; ++i)
            std::copy_n(&V.a[order[i] * n], n, &out.vectors.a[i * n]);
    }
    return out;
}

struct SpectrumSample {
    std::vector<double> eigenvalues;  // ascending
    int n = 0;
    double rho = 0.0;
    std::uint64_t seed = 0;
};

inline SpectrumSample spectrum_of_w(const EllipticMatrixSample& x, const JacobiOptions& opt = {}) {
    auto eig = symmetric_eigen(form_w(x), false, opt, x.seed);
    return {std::move(eig.values), x.n, x.rho, x.seed};
}

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            c_ += (sum_ - t) + x;
        else
            c_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + c_; }

private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

struct MomentEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
};

/// Across-sample mean and standard error of (1/N) sum_i lambda_i^k, k = 0..kmax.
inline std::vector<MomentEstimate> empirical_moments(const std::vector<SpectrumSample>& samples, int kmax) {
    if (samples.empty()) throw std::invalid_argument("empirical_moments: no samples");
    if (samples.size() < 2) throw std::invalid_argument("empirical_moments: need at least two samples");
    if (kmax < 0 || kmax > 6) throw std::out_of_range("empirical_moments: kmax must be in [0, 6]");
    const double t = static_cast<double>(samples.size());
    std::vector<MomentEstimate> out(kmax + 1);
    for (int k = 0; k <= kmax; ++k) {
        std::vector<double> per(samples.size());
        for (std::size_t s = 0; s < samples.size(); ++s) {
            CompensatedSum acc;
            for (double l : samples[s].eigenvalues) acc.add(std::pow(l, k));
            per[s] = acc.value() / static_cast<double>(samples[s].eigenvalues.size());
        }
        CompensatedSum mean;
        for (double v : per) mean.add(v);
        const double m = mean.value() / t;
        CompensatedSum var;
        for (double v : per) var.add((v - m) * (v - m));
        out[k].mean = m;
        out[k].stderr_ = std::sqrt(var.value() / (t - 1.0) / t);
    }
    return out;
}

struct Histogram {
    double lo = 0.0, hi = 1.0;
    std::vector<std::uint64_t> counts;
    std::vector<double> heights;  // density-normalized over all eigenvalues, inside or not

    double width() const { return (hi - lo) / static_cast<double>(counts.size()); }
    double bin_lo(std::size_t i) const { return lo + width() * static_cast<double>(i); }
    double bin_hi(std::size_t i) const { return i + 1 == counts.size() ? hi : lo + width() * static_cast<double>(i + 1); }
};

inline Histogram histogram(const std::vector<SpectrumSample>& samples, int bins, double lo, double hi) {
    if (bins < 1) throw std::invalid_argument("histogram: bins must be >= 1");
    if (!(lo < hi)) throw std::invalid_argument("histogram: need lo < hi");
    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.counts.assign(bins, 0);
    h.heights.assign(bins, 0.0);
    std::uint64_t total = 0;
    const double w = h.width();
    for (const auto& s : samples)
        for (double x : s.eigenvalues) {
            ++total;
            if (x < lo || x > hi) continue;
            auto b = static_cast<std::size_t>((x - lo) / w);
            if (b >= h.counts.size()) b = h.counts.size() - 1;
            ++h.counts[b];
        }
    if (total == 0) return h;
    for (std::size_t i = 0; i < h.counts.size(); ++i)
        h.heights[i] = static_cast<double>(h.counts[i]) / (static_cast<double>(total) * w);
    return h;
}

/// 0.5 * sum |h_i - p_i| * width, p_i being reference bin heights.
inline double total_variation(const Histogram& h, const std::vector<double>& reference_heights) {
    if (reference_heights.size() != h.heights.size()) throw std::invalid_argument("total_variation: bin mismatch");
    double tv = 0.0;
    for (std::size_t i = 0; i < h.heights.size(); ++i) tv += std::abs(h.heights[i] - reference_heights[i]);
    return 0.5 * tv * h.width();
}

/// Worker count from ELLIPTIC_THREADS; 0 or unset means hardware concurrency.
inline unsigned thread_count_from_env() {
    unsigned n = 0;
    if (const char* env = std::getenv("ELLIPTIC_THREADS")) n = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

/// Runs trials 0..trials-1 on up to `threads` workers; output is indexed by trial.
inline std::vector<SpectrumSample> run_trials(int n, double rho, int trials, std::uint64_t seed, unsigned threads,
                                              double diag_variance = 1.0) {
    if (trials < 0) throw std::invalid_argument("run_trials: trials must be non-negative");
    std::vector<SpectrumSample> out(static_cast<std::size_t>(trials));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (int t; (t = next.fetch_add(1)) < trials;) {
            try {
                out[t] = spectrum_of_w(sample_elliptic(n, rho, trial_seed(seed, static_cast<std::uint64_t>(t)), diag_variance));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max(trials, 1))));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace elliptic
