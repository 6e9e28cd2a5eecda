#pragma once

/**
 * @file momentrec.hpp
 * @brief Moment polynomials of the limiting squared-singular-value law of X^2/N.
 *
 * U_k and V_k are the partition functions of planar chord diagrams on 2k
 * vertices under the two colorings. They obey
 *
 *   U_{k+1} = sum_{i=0}^{floor((k-1)/2)} U_{k-2i-1} V_{2i+1} + rho * sum_{i=0}^{floor(k/2)} V_{2i} U_{k-2i}
 *   V_{k+1} = sum_{i=0}^{floor(k/2)} U_{2i} V_{k-2i}     + rho * sum_{i=0}^{floor((k-1)/2)} U_{2i+1} V_{k-2i-1}
 *
 * with U_0 = V_0 = 1, and the k-th moment is M_k(rho) = U_{2k}(rho).
 */

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "elliptic/exactpoly.hpp"

namespace elliptic {

struct MomentTable {
    std::vector<IntPolynomial> u_polys;
    std::vector<IntPolynomial> v_polys;
    int kmax = 0;
};

inline MomentTable build_uv(int kmax) {
    if (kmax < 0) throw std::invalid_argument("build_uv: kmax must be non-negative, got " + std::to_string(kmax));
    MomentTable t;
    t.kmax = kmax;
    t.u_polys.reserve(kmax + 1);
    t.v_polys.reserve(kmax + 1);
    t.u_polys.push_back(IntPolynomial{1});
    t.v_polys.push_back(IntPolynomial{1});
    const auto& U = t.u_polys;
    const auto& V = t.v_polys;
    for (int k = 0; k + 1 <= kmax; ++k) {
        IntPolynomial u_plain, u_rho, v_plain, v_rho;
        // the odd-index sums are empty at k = 0
        for (int i = 0; 2 * i + 1 <= k; ++i) {
            u_plain += U[k - 2 * i - 1] * V[2 * i + 1];
            v_rho += U[2 * i + 1] * V[k - 2 * i - 1];
        }
        for (int i = 0; 2 * i <= k; ++i) {
            u_rho += V[2 * i] * U[k - 2 * i];
            v_plain += U[2 * i] * V[k - 2 * i];
        }
        t.u_polys.push_back(u_plain + u_rho.shifted(1));
        t.v_polys.push_back(v_plain + v_rho.shifted(1));
    }
    return t;
}

inline const IntPolynomial& moment_polynomial(const MomentTable& table, int k) {
    if (k < 0 || 2 * k > table.kmax)
        throw std::out_of_range("moment_polynomial: k=" + std::to_string(k) + " needs U_" + std::to_string(2 * k) +
                                " but the table stops at U_" + std::to_string(table.kmax));
    return table.u_polys[2 * k];
}

/// M_0(rho) .. M_kmax(rho), evaluated from the exact polynomials.
inline std::vector<double> moment_values(const MomentTable& table, double rho, int kmax) {
    if (!(std::abs(rho) <= 1.0)) throw std::invalid_argument("moment_values: |rho| must be <= 1");
    if (kmax < 0 || 2 * kmax > table.kmax) throw std::out_of_range("moment_values: kmax exceeds table");
    std::vector<double> out;
    out.reserve(kmax + 1);
    for (int k = 0; k <= kmax; ++k) out.push_back(evaluate(table.u_polys[2 * k], rho));
    return out;
}

}  // namespace elliptic
