#pragma once

/**
 * @file exactpoly.hpp
 * @brief Dense univariate polynomials with arbitrary-precision integer
 *        coefficients, plus the Narayana polynomial families of types A and B.
 *
 * All moment, cumulant and Narayana polynomials in the library live in
 * IntPolynomial. Narayana polynomials are produced in an abstract variable t;
 * substitute_square() embeds them into the matrix parameter via t = rho^2.
 */

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace elliptic {

using BigInt = boost::multiprecision::cpp_int;

class IntPolynomial {
public:
    IntPolynomial() = default;

    IntPolynomial(std::initializer_list<long long> cs) {
        coeffs_.reserve(cs.size());
        for (long long c : cs) coeffs_.emplace_back(c);
        normalize();
    }

    explicit IntPolynomial(std::vector<BigInt> cs) : coeffs_(std::move(cs)) { normalize(); }

    static IntPolynomial constant(BigInt c) { return monomial(std::move(c), 0); }

    static IntPolynomial monomial(BigInt c, std::size_t power) {
        if (c == 0) return {};
        std::vector<BigInt> cs(power + 1);
        cs[power] = std::move(c);
        return IntPolynomial(std::move(cs));
    }

    const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const noexcept { return coeffs_.empty(); }

    // -1 for the zero polynomial
    std::ptrdiff_t degree() const noexcept { return static_cast<std::ptrdiff_t>(coeffs_.size()) - 1; }

    BigInt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

    IntPolynomial& operator+=(const IntPolynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        normalize();
        return *this;
    }

    IntPolynomial& operator-=(const IntPolynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        normalize();
        return *this;
    }

    IntPolynomial& operator*=(const IntPolynomial& o) {
        *this = *this * o;
        return *this;
    }

    IntPolynomial& operator*=(const BigInt& c) {
        if (c == 0) {
            coeffs_.clear();
            return *this;
        }
        for (auto& x : coeffs_) x *= c;
        return *this;
    }

    friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
    friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
    friend IntPolynomial operator*(IntPolynomial a, const BigInt& c) { return a *= c; }
    friend IntPolynomial operator*(const BigInt& c, IntPolynomial a) { return a *= c; }

    IntPolynomial operator-() const {
        IntPolynomial r = *this;
        for (auto& x : r.coeffs_) x = -x;
        return r;
    }

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return IntPolynomial(std::move(out));
    }

    // Multiplication by x^k.
    IntPolynomial shifted(std::size_t k) const {
        if (is_zero() || k == 0) return *this;
        std::vector<BigInt> cs(k);
        cs.insert(cs.end(), coeffs_.begin(), coeffs_.end());
        return IntPolynomial(std::move(cs));
    }

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }

    std::string to_string(char var = 'x') const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            const BigInt& c = coeffs_[i];
            if (c == 0) continue;
            BigInt mag = c < 0 ? BigInt(-c) : c;
            if (first) {
                if (c < 0) os << '-';
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            if (i == 0 || mag != 1) os << mag;
            if (i >= 1) os << var;
            if (i >= 2) os << '^' << i;
        }
        return os.str();
    }

private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<BigInt> coeffs_;  // coeffs_[i] multiplies x^i
};

inline std::ostream& operator<<(std::ostream& os, const IntPolynomial& p) { return os << p.to_string(); }

/// x^n * p(1/x). Requires degree(p) <= n.
inline IntPolynomial reverse(const IntPolynomial& p, std::size_t n) {
    if (p.degree() > static_cast<std::ptrdiff_t>(n))
        throw std::invalid_argument("reverse: degree " + std::to_string(p.degree()) + " exceeds bound " +
                                    std::to_string(n));
    std::vector<BigInt> cs(n + 1);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) cs[n - i] = p.coeffs()[i];
    return IntPolynomial(std::move(cs));
}

inline IntPolynomial derivative(const IntPolynomial& p) {
    if (p.degree() < 1) return {};
    std::vector<BigInt> cs(p.coeffs().size() - 1);
    for (std::size_t i = 1; i < p.coeffs().size(); ++i) cs[i - 1] = p.coeffs()[i] * static_cast<unsigned>(i);
    return IntPolynomial(std::move(cs));
}

/// p(x^2): maps a polynomial in t onto the even powers of rho.
inline IntPolynomial substitute_square(const IntPolynomial& p) {
    if (p.is_zero()) return {};
    std::vector<BigInt> cs(2 * p.coeffs().size() - 1);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) cs[2 * i] = p.coeffs()[i];
    return IntPolynomial(std::move(cs));
}

inline bool is_palindromic(const IntPolynomial& p, std::size_t n) {
    return p.degree() <= static_cast<std::ptrdiff_t>(n) && reverse(p, n) == p;
}

/// Horner evaluation in double precision.
inline double evaluate(const IntPolynomial& p, double x) {
    double acc = 0.0;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + static_cast<double>(*it);
    return acc;
}

inline BigInt evaluate_exact(const IntPolynomial& p, const BigInt& x) {
    BigInt acc = 0;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline BigInt catalan(unsigned n) { return binomial(2 * n, n) / (n + 1); }

inline BigInt fuss_catalan(unsigned k) { return binomial(3 * k, k) / (2 * k + 1); }

/// Catalan numbers with even index: binom(4k,2k)/(2k+1).
inline BigInt even_catalan(unsigned k) { return catalan(2 * k); }

/// Type-A Narayana polynomial: sum_k (1/k) C(n-1,k-1) C(n,k-1) t^k, with N^A_0 = 1.
inline IntPolynomial narayana_a(unsigned n) {
    if (n == 0) return IntPolynomial{1};
    std::vector<BigInt> cs(n + 1);
    for (unsigned k = 1; k <= n; ++k) cs[k] = binomial(n - 1, k - 1) * binomial(n, k - 1) / k;
    return IntPolynomial(std::move(cs));
}

/// Type-B Narayana polynomial: sum_k C(n,k)^2 t^k.
inline IntPolynomial narayana_b(unsigned n) {
    std::vector<BigInt> cs(n + 1);
    for (unsigned k = 0; k <= n; ++k) {
        BigInt b = binomial(n, k);
        cs[k] = b * b;
    }
    return IntPolynomial(std::move(cs));
}

/// Q_m(t) = d/dt N^A_{m+1}(t) = sum_{k=1}^{m+1} C(m,k-1) C(m+1,k-1) t^{k-1}.
inline IntPolynomial q_poly(unsigned m) {
    const unsigned n = m + 1;
    std::vector<BigInt> cs(n);
    for (unsigned k = 1; k <= n; ++k) cs[k - 1] = binomial(n - 1, k - 1) * binomial(n, k - 1);
    return IntPolynomial(std::move(cs));
}

}  // namespace elliptic
