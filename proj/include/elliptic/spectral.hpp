#pragma once

/**
 * @file spectral.hpp
 * @brief R-transform, Cauchy transform and spectral densities of the
 *        symmetrized law G and of the squared-singular-value law F.
 *
 * The Cauchy transform s = s_G(z) solves
 *
 *     1 / (s * sqrt((rho^2-1)^2 s^4 - 2(rho^2+1) s^2 + 1)) = z.
 *
 * Squaring and putting u = s^2 gives the cubic
 *
 *     (rho^2-1)^2 z^2 u^3 - 2(rho^2+1) z^2 u^2 + z^2 u - 1 = 0,
 *
 * which degenerates to a quadratic at |rho| = 1. Its roots come from the
 * eigenvalues of the companion matrix. Of the candidates s = +-sqrt(u) the
 * physical one is tracked by continuation from high above the real axis,
 * where s ~ 1/z, down to the target point.
 *
 * Densities: d_G(x) = -Im s_G(x + i eps) / pi and d_F(x) = d_G(sqrt x) / sqrt x.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "elliptic/exactpoly.hpp"

namespace elliptic {

using cplx = std::complex<double>;

class branch_cut_error : public std::domain_error {
public:
    explicit branch_cut_error(cplx z)
        : std::domain_error("r_transform: argument lies on the square-root branch cut"), z_(z) {}
    cplx z() const { return z_; }

private:
    cplx z_;
};

class continuation_error : public std::runtime_error {
public:
    continuation_error(const std::string& what, cplx z) : std::runtime_error(what), z_(z) {}
    cplx z() const { return z_; }

private:
    cplx z_;
};

/// Free cumulant c_{2n}(rho) = N^B_n(rho^2), evaluated in double precision.
inline double even_cumulant(unsigned n, double rho) { return evaluate(narayana_b(n), rho * rho); }

inline constexpr double kSeriesRadius = 1e-3;

/// R_G(z) = (1/z) (1/sqrt(((rho^2-1) z^2 - 1)^2 - 4 z^2) - 1), principal branch.
inline cplx r_transform(cplx z, double rho) {
    if (std::abs(z) < kSeriesRadius) {
        // c_2 z + c_4 z^3 + ...; the removable singularity at 0 gives R(0) = c_1 = 0
        cplx acc = 0.0, zpow = z;
        for (unsigned n = 1; n <= 6; ++n) {
            acc += even_cumulant(n, rho) * zpow;
            zpow *= z * z;
        }
        return acc;
    }
    const double r2 = rho * rho;
    const cplx inner = (r2 - 1.0) * z * z - 1.0;
    const cplx arg = inner * inner - 4.0 * z * z;
    if (arg.imag() == 0.0 && arg.real() < 0.0) throw branch_cut_error(z);
    return (1.0 / std::sqrt(arg) - 1.0) / z;
}

struct CauchyEvaluation {
    cplx z;
    cplx s;
    double residual = 0.0;  // |1/(s sqrt(D(s))) - z| / |z|
    int branch_id = -1;     // 2 * (cubic root index) + (0 for +sqrt(u), 1 for -sqrt(u))
};

struct ContinuationOptions {
    double start_height = 1e4;
    double max_log_step = 0.25;    // largest step in log(Im z) during the descent
    double min_log_step = 1e-7;
    double ambiguity_ratio = 0.35;  // accepted root must be this much closer than the runner-up
    double tolerance = 1e-12;
};

namespace detail {

inline double degeneracy_threshold() { return 1e-14; }

/// Roots u of the cubic (or quadratic at |rho| = 1), polished by Newton.
inline std::vector<cplx> u_roots(cplx z, double rho) {
    const double r2 = rho * rho;
    const double a = (r2 - 1.0) * (r2 - 1.0);
    const double b = 2.0 * (r2 + 1.0);
    const cplx z2 = z * z;
    // monic coefficients, highest degree first
    std::vector<cplx> poly;
    if (a < degeneracy_threshold())
        poly = {-b * z2, z2, -1.0};
    else
        poly = {a * z2, -b * z2, z2, -1.0};
    const int deg = static_cast<int>(poly.size()) - 1;

    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
    for (int j = 0; j < deg; ++j) companion(0, j) = -poly[j + 1] / poly[0];
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<cplx> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + deg);

    auto horner = [&](cplx u, cplx& deriv) {
        cplx p = poly[0];
        deriv = 0.0;
        for (int i = 1; i <= deg; ++i) {
            deriv = deriv * u + p;
            p = p * u + poly[i];
        }
        return p;
    };
    for (auto& u : roots) {
        for (int it = 0; it < 3; ++it) {
            cplx d;
            const cplx p = horner(u, d);
            if (d == 0.0) break;
            const cplx step = p / d;
            u -= step;
            if (std::abs(step) <= 1e-16 * std::abs(u)) break;
        }
    }
    return roots;
}

inline std::vector<cplx> s_candidates(cplx z, double rho) {
    std::vector<cplx> out;
    for (const cplx& u : u_roots(z, rho)) {
        const cplx r = std::sqrt(u);
        out.push_back(r);
        out.push_back(-r);
    }
    return out;
}

inline cplx defect_value(cplx s, double rho) {
    const double r2 = rho * rho;
    const cplx s2 = s * s;
    const cplx d = (r2 - 1.0) * (r2 - 1.0) * s2 * s2 - 2.0 * (r2 + 1.0) * s2 + 1.0;
    return 1.0 / (s * std::sqrt(d));
}

inline double relative_defect(cplx s, cplx z, double rho) { return std::abs(defect_value(s, rho) - z) / std::abs(z); }

struct Pick {
    int index;
    double nearest;
    double runner_up;
};

inline Pick closest(const std::vector<cplx>& cands, cplx target) {
    Pick p{-1, std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const double d = std::abs(cands[i] - target);
        if (d < p.nearest) {
            p.runner_up = p.nearest;
            p.nearest = d;
            p.index = static_cast<int>(i);
        } else if (d < p.runner_up) {
            p.runner_up = d;
        }
    }
    return p;
}

inline std::string describe(cplx z, double rho) {
    std::ostringstream os;
    os.precision(17);
    os << "z=(" << z.real() << "," << z.imag() << ") rho=" << rho;
    return os.str();
}

}  // namespace detail

/**
 * Physical branch of s_G at z (Im z > 0). The path runs horizontally at
 * height start_height from i*start_height to Re z, then descends to z in
 * log(Im z). At each step the root nearest to a linear predictor is taken,
 * and the step is halved while that choice is ambiguous.
 */
inline CauchyEvaluation cauchy_g(cplx z, double rho, const ContinuationOptions& opt = {}) {
    if (!(z.imag() > 0.0)) throw std::invalid_argument("cauchy_g: requires Im(z) > 0");
    if (!(std::abs(rho) <= 1.0)) throw std::invalid_argument("cauchy_g: requires |rho| <= 1");

    const double x = z.real();
    const double y_start = std::max(opt.start_height, z.imag());
    // a negligible offset is absorbed into the start point: s = 1/z there to O(1/z^3)
    const bool skip_horizontal = std::abs(x) <= 1e-6 * y_start;
    cplx prev_z(skip_horizontal ? x : 0.0, y_start);
    cplx s = 1.0 / prev_z;
    cplx prev_prev_s = s;
    cplx prev_prev_z = prev_z;
    int branch = -1;

    auto advance = [&](cplx target_z) -> bool {
        // linear predictor in z
        cplx guess = s;
        // a secant over a step that short is dominated by rounding in s
        if (std::abs(prev_z - prev_prev_z) > 1e-6 * std::abs(prev_z)) guess = s + (s - prev_prev_s) / (prev_z - prev_prev_z) * (target_z - prev_z);
        const auto cands = detail::s_candidates(target_z, rho);
        const auto pick = detail::closest(cands, guess);
        if (pick.index < 0 || !(pick.nearest <= opt.ambiguity_ratio * pick.runner_up)) return false;
        prev_prev_s = s;
        prev_prev_z = prev_z;
        s = cands[pick.index];
        prev_z = target_z;
        branch = pick.index;
        return true;
    };

    // horizontal leg: |x| is tiny next to the start height, a handful of steps suffice
    const int horizontal_steps =
        skip_horizontal ? 0 : std::max(1, static_cast<int>(std::ceil(std::abs(x) / (0.05 * y_start))));
    for (int i = 1; i <= horizontal_steps; ++i) {
        const cplx target(x * i / horizontal_steps, y_start);
        if (!advance(target))
            throw continuation_error("cauchy_g: ambiguous root on horizontal leg, " + detail::describe(target, rho),
                                     target);
    }

    // vertical descent in log(Im z)
    double log_y = std::log(y_start);
    const double log_target = std::log(z.imag());
    double step = opt.max_log_step;
    while (log_y > log_target) {
        const double next = std::max(log_target, log_y - step);
        const cplx target(x, next == log_target ? z.imag() : std::exp(next));
        if (advance(target)) {
            log_y = next;
            step = std::min(opt.max_log_step, step * 1.5);
        } else {
            step *= 0.5;
            if (step < opt.min_log_step)
                throw continuation_error("cauchy_g: root collision during continuation, " + detail::describe(target, rho),
                                         target);
        }
    }
    CauchyEvaluation ev{z, s, detail::relative_defect(s, z, rho), branch};
    if (!(ev.s.imag() < 0.0))
        throw continuation_error("cauchy_g: continued root violates Im(s) < 0, " + detail::describe(z, rho), z);
    return ev;
}

enum class Distribution { F, G };

struct DensityCurve {
    std::vector<double> xs;
    std::vector<double> values;  // NaN where the evaluation failed
    Distribution dist = Distribution::G;
    double eps = 1e-6;
    std::vector<std::size_t> missing;  // indices of failed grid points
};

struct DensityOptions {
    double eps = 1e-6;
    bool richardson = false;  // combine eps and eps/2 as 2 d(eps/2) - d(eps)
    ContinuationOptions continuation{};
};

/// -Im s_G(x + i eps) / pi at one point; throws continuation_error on failure.
inline double density_g_at(double x, double rho, const DensityOptions& opt = {}) {
    auto at = [&](double eps) { return -cauchy_g(cplx(x, eps), rho, opt.continuation).s.imag() / std::numbers::pi; };
    if (!opt.richardson) return at(opt.eps);
    return 2.0 * at(0.5 * opt.eps) - at(opt.eps);
}

inline DensityCurve density_g(const std::vector<double>& xs, double rho, const DensityOptions& opt = {}) {
    if (!(opt.eps > 0.0)) throw std::invalid_argument("density_g: eps must be positive");
    DensityCurve c;
    c.xs = xs;
    c.dist = Distribution::G;
    c.eps = opt.eps;
    c.values.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        try {
            c.values.push_back(density_g_at(xs[i], rho, opt));
        } catch (const continuation_error&) {
            c.values.push_back(std::numeric_limits<double>::quiet_NaN());
            c.missing.push_back(i);
        }
    }
    return c;
}

inline double density_f_at(double x, double rho, const DensityOptions& opt = {}) {
    if (!(x > 0.0)) throw std::invalid_argument("density_f: x must be positive");
    const double r = std::sqrt(x);
    return density_g_at(r, rho, opt) / r;
}

inline DensityCurve density_f(const std::vector<double>& xs, double rho, const DensityOptions& opt = {}) {
    for (double x : xs)
        if (!(x > 0.0)) throw std::invalid_argument("density_f: grid points must be positive");
    std::vector<double> roots(xs.size());
    std::transform(xs.begin(), xs.end(), roots.begin(), [](double x) { return std::sqrt(x); });
    DensityCurve c = density_g(roots, rho, opt);
    for (std::size_t i = 0; i < xs.size(); ++i) c.values[i] /= roots[i];
    c.xs = xs;
    c.dist = Distribution::F;
    return c;
}

inline double trapezoid_mass(const DensityCurve& c) {
    double m = 0.0;
    for (std::size_t i = 1; i < c.xs.size(); ++i) {
        if (std::isnan(c.values[i]) || std::isnan(c.values[i - 1])) continue;
        m += 0.5 * (c.values[i] + c.values[i - 1]) * (c.xs[i] - c.xs[i - 1]);
    }
    return m;
}

/// Right edge of supp G, by bisection on density_g(x) > threshold.
inline double support_edge_g(double rho, double threshold = 1e-8) {
    DensityOptions opt;
    opt.eps = 1e-12;
    double lo = 0.5, hi = 4.5;  // supp F lies in [0, 16]
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        double d;
        try {
            d = density_g_at(mid, rho, opt);
        } catch (const continuation_error&) {
            // root collision only happens at an edge point itself
            return mid;
        }
        (d > threshold ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline double support_edge_f(double rho) {
    const double e = support_edge_g(rho);
    return e * e;
}

struct QuadratureOptions {
    int panels = 4000;  // Simpson panels in the substituted variable
    double height = 4.05;
    DensityOptions density{};
};

/**
 * integral of x^k d_F(x) dx = 2 * integral_0^inf y^(2k) d_G(y) dy.
 *
 * The substitution y = H w^4 clears the integrable singularity of d_G at
 * the origin, so no inner cutoff is needed.
 */
inline double f_moment(double rho, int k, const QuadratureOptions& q = {}) {
    const int n = q.panels + (q.panels % 2);
    const double h = 1.0 / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double w = i * h;
        if (w == 0.0) continue;  // Jacobian vanishes
        const double y = q.height * w * w * w * w;
        const double jac = 4.0 * q.height * w * w * w;
        const double f = density_g_at(y, rho, q.density) * jac * std::pow(y, 2 * k);
        const double weight = (i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += weight * f;
    }
    return 2.0 * acc * h / 3.0;
}

/// F-mass of [a, b], 0 <= a < b, by Simpson in y = sqrt(a) + (sqrt(b) - sqrt(a)) w^4.
inline double f_interval_mass(double rho, double a, double b, int panels = 64, const DensityOptions& opt = {}) {
    if (!(a >= 0.0 && b > a)) throw std::invalid_argument("f_interval_mass: need 0 <= a < b");
    const double ya = std::sqrt(a), span = std::sqrt(b) - ya;
    const int n = panels + (panels % 2);
    const double h = 1.0 / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double w = i * h;
        const double jac = 4.0 * span * w * w * w;
        if (jac == 0.0) continue;
        const double f = density_g_at(ya + span * w * w * w * w, rho, opt) * jac;
        const double weight = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += weight * f;
    }
    return 2.0 * acc * h / 3.0;
}

struct SeriesMomentEntry {
    int order;
    double recovered;
    double expected;
    double error;  // relative for even orders, absolute for odd ones
};

/**
 * Recovers the moments of G from s_G by the contour integral
 * m_j = (1/2 pi i) \oint z^j s(z) dz over |z| = radius, using the trapezoid
 * rule (exponentially accurate outside the support). Lower half-plane
 * samples come from s(conj z) = conj s(z). Compares m_{2k} with
 * expected_even[k] and odd orders with 0.
 */
inline std::vector<SeriesMomentEntry> series_moments_check(double rho, int kmax, const std::vector<double>& expected_even,
                                                           double radius = 5.0, int samples = 512) {
    if (kmax < 0 || kmax > 8) throw std::out_of_range("series_moments_check: kmax must be in [0, 8]");
    if (static_cast<int>(expected_even.size()) < kmax + 1)
        throw std::invalid_argument("series_moments_check: expected moments 0..kmax required");
    std::vector<cplx> zs(samples), ss(samples);
    for (int j = 0; j < samples; ++j) {
        const double theta = 2.0 * std::numbers::pi * (j + 0.5) / samples;
        zs[j] = std::polar(radius, theta);
        if (zs[j].imag() > 0.0)
            ss[j] = cauchy_g(zs[j], rho).s;
        else
            ss[j] = std::conj(cauchy_g(std::conj(zs[j]), rho).s);
    }
    std::vector<SeriesMomentEntry> out;
    for (int m = 0; m <= 2 * kmax; ++m) {
        cplx acc = 0.0;
        for (int j = 0; j < samples; ++j) acc += std::pow(zs[j], m + 1) * ss[j];
        const double value = acc.real() / samples;
        if (m % 2 == 0) {
            const double e = expected_even[m / 2];
            out.push_back({m, value, e, std::abs(value - e) / std::abs(e)});
        } else {
            out.push_back({m, value, 0.0, std::abs(value)});
        }
    }
    return out;
}

}  // namespace elliptic
