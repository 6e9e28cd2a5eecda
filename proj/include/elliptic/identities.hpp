#pragma once

/**
 * @file identities.hpp
 * @brief Exact verification of the relations tying N^A_n, N^B_n and Q_n together.
 *
 * Every identity is checked as an equality of integer polynomials; a failure
 * carries the difference polynomial (lhs - rhs). The atomic-diagram
 * recurrences are additionally run as a standalone recursion from the
 * initial values 1, 1, 1 and compared against the closed forms.
 */

#include <array>
#include <string_view>
#include <vector>

#include "elliptic/exactpoly.hpp"

namespace elliptic {

enum class Identity {
    NarayanaBFromQ,       // N^B_n = Q_{n-1} + t^n Q_{n-1}(1/t)
    NarayanaAFromQ,       // (n+1) N^A_n = t Q_{n-1} + t^n Q_{n-1}(1/t)
    QFromProducts,        // Q_{n-1} = sum_k N^A_{k-1} N^B_{n-k}
    QRecurrence,          // Q_n = (n+1) N^A_n + sum_k N^A_{k-1} Q_{n-k}
    NarayanaARecurrence,  // N^A_n = t N^A_{n-1} + sum_{k<n} N^A_{k-1} N^A_{n-k}
    NarayanaBRecurrence,  // N^B_n = t N^B_{n-1} + sum N^A_{k-1} N^B_{n-k} + sum_{k<n} N^B_{k-1} N^A_{n-k}
    AtomicB,              // N^B_n = t^n Q_{n-1}(1/t) + sum_k N^A_{k-1} N^B_{n-k}
    AtomicReversedQ,      // t^n Q_n(1/t) = N^B_n + sum_k t^{n-k} N^A_{k-1} Q_{n-k}(1/t)
    AtomicA,              // N^A_n = sum_k t^k N^A_{k-1}(1/t) N^A_{n-k}
    AtomicFamilies,       // the three atomic recurrences alone rebuild N^A, N^B, Q
};

inline constexpr std::array<Identity, 10> kAllIdentities = {
    Identity::NarayanaBFromQ,      Identity::NarayanaAFromQ,      Identity::QFromProducts, Identity::QRecurrence,
    Identity::NarayanaARecurrence, Identity::NarayanaBRecurrence, Identity::AtomicB,       Identity::AtomicReversedQ,
    Identity::AtomicA,             Identity::AtomicFamilies,
};

inline std::string_view identity_name(Identity id) {
    switch (id) {
        case Identity::NarayanaBFromQ: return "narayana_b_from_q";
        case Identity::NarayanaAFromQ: return "narayana_a_from_q";
        case Identity::QFromProducts: return "q_from_products";
        case Identity::QRecurrence: return "q_recurrence";
        case Identity::NarayanaARecurrence: return "narayana_a_recurrence";
        case Identity::NarayanaBRecurrence: return "narayana_b_recurrence";
        case Identity::AtomicB: return "atomic_b";
        case Identity::AtomicReversedQ: return "atomic_reversed_q";
        case Identity::AtomicA: return "atomic_a";
        case Identity::AtomicFamilies: return "atomic_families";
    }
    return "unknown";
}

struct IdentityCheck {
    Identity id;
    unsigned n;
    bool passed;
    IntPolynomial difference;  // zero when passed
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;

    std::vector<IdentityCheck> failures() const {
        std::vector<IdentityCheck> out;
        for (const auto& c : checks)
            if (!c.passed) out.push_back(c);
        return out;
    }
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

namespace detail {

// Closed forms for 0..n_max+1, computed once per report.
struct NarayanaTables {
    std::vector<IntPolynomial> a, b, q;
    explicit NarayanaTables(unsigned n_max) {
        for (unsigned i = 0; i <= n_max + 1; ++i) {
            a.push_back(narayana_a(i));
            b.push_back(narayana_b(i));
            q.push_back(q_poly(i));
        }
    }
};

inline IntPolynomial identity_difference(Identity id, unsigned n, const NarayanaTables& T) {
    const auto& A = T.a;
    const auto& B = T.b;
    const auto& Q = T.q;
    const IntPolynomial t = IntPolynomial::monomial(1, 1);
    IntPolynomial lhs, rhs;
    switch (id) {
        case Identity::NarayanaBFromQ:
            lhs = B[n];
            rhs = Q[n - 1] + reverse(Q[n - 1], n);
            break;
        case Identity::NarayanaAFromQ:
            lhs = A[n] * BigInt(n + 1);
            rhs = t * Q[n - 1] + reverse(Q[n - 1], n);
            break;
        case Identity::QFromProducts:
            lhs = Q[n - 1];
            for (unsigned k = 1; k <= n; ++k) rhs += A[k - 1] * B[n - k];
            break;
        case Identity::QRecurrence:
            lhs = Q[n];
            rhs = A[n] * BigInt(n + 1);
            for (unsigned k = 1; k <= n; ++k) rhs += A[k - 1] * Q[n - k];
            break;
        case Identity::NarayanaARecurrence:
            lhs = A[n];
            rhs = t * A[n - 1];
            for (unsigned k = 1; k + 1 <= n; ++k) rhs += A[k - 1] * A[n - k];
            break;
        case Identity::NarayanaBRecurrence:
            lhs = B[n];
            rhs = t * B[n - 1];
            for (unsigned k = 1; k <= n; ++k) rhs += A[k - 1] * B[n - k];
            for (unsigned k = 1; k + 1 <= n; ++k) rhs += B[k - 1] * A[n - k];
            break;
        case Identity::AtomicB:
            lhs = B[n];
            rhs = reverse(Q[n - 1], n);
            for (unsigned k = 1; k <= n; ++k) rhs += A[k - 1] * B[n - k];
            break;
        case Identity::AtomicReversedQ:
            lhs = reverse(Q[n], n);
            rhs = B[n];
            for (unsigned k = 1; k <= n; ++k) rhs += A[k - 1] * reverse(Q[n - k], n - k);
            break;
        case Identity::AtomicA:
            lhs = A[n];
            // t^k N^A_{k-1}(1/t) is a polynomial since deg N^A_{k-1} <= k-1
            for (unsigned k = 1; k <= n; ++k) rhs += reverse(A[k - 1], k) * A[n - k];
            break;
        case Identity::AtomicFamilies:
            break;
    }
    return lhs - rhs;
}

}  // namespace detail

struct AtomicFamilies {
    std::vector<IntPolynomial> a, b, q;
};

/// Rebuilds the three families from the atomic recurrences alone, starting
/// from a_0 = b_0 = q_0 = 1. No closed form is consulted.
inline AtomicFamilies solve_atomic_recurrences(unsigned n_max) {
    AtomicFamilies f;
    f.a.push_back(IntPolynomial{1});
    f.b.push_back(IntPolynomial{1});
    f.q.push_back(IntPolynomial{1});
    for (unsigned n = 1; n <= n_max; ++n) {
        IntPolynomial a;
        for (unsigned k = 1; k <= n; ++k) a += reverse(f.a[k - 1], k) * f.a[n - k];
        f.a.push_back(a);

        IntPolynomial b = reverse(f.q[n - 1], n);
        for (unsigned k = 1; k <= n; ++k) b += f.a[k - 1] * f.b[n - k];
        f.b.push_back(b);

        IntPolynomial rq = f.b[n];
        for (unsigned k = 1; k <= n; ++k) rq += f.a[k - 1] * reverse(f.q[n - k], n - k);
        f.q.push_back(reverse(rq, n));
    }
    return f;
}

inline IdentityReport check_identities(unsigned n_max) {
    IdentityReport report;
    if (n_max < 1) return report;
    const detail::NarayanaTables tables(n_max);
    const AtomicFamilies fam = solve_atomic_recurrences(n_max);
    for (unsigned n = 1; n <= n_max; ++n) {
        for (Identity id : kAllIdentities) {
            IntPolynomial diff;
            if (id == Identity::AtomicFamilies) {
                diff = (fam.a[n] - tables.a[n]) + (fam.b[n] - tables.b[n]) + (fam.q[n] - tables.q[n]);
                // guard against cancellation between the three residues
                if (!(fam.a[n] == tables.a[n] && fam.b[n] == tables.b[n] && fam.q[n] == tables.q[n]) && diff.is_zero())
                    diff = IntPolynomial{1};
            } else {
                diff = detail::identity_difference(id, n, tables);
            }
            report.checks.push_back({id, n, diff.is_zero(), diff});
        }
    }
    return report;
}

}  // namespace elliptic
