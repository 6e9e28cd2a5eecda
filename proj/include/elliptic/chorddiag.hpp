#pragma once

/**
 * @file chorddiag.hpp
 * @brief Planar chord diagrams on colored vertices and their rho-weights.
 *
 * A diagram on 2m vertices 1..2m is a perfect matching. Vertex j is black
 * under a coloring rule with phase p iff (j + p) mod 4 is 1 or 2, so
 *
 *   U-rule      p = 0   black iff j mod 4 in {1,2}
 *   V-rule      p = 1   black iff j mod 4 in {0,1}
 *   U-inverted  p = 2
 *   V-inverted  p = 3
 *
 * The weight of a planar diagram is rho^l, l = number of same-color chords.
 * Removing a prefix of s vertices shifts the phase by s, which is how the
 * first-chord split lands in V / U / inverted-U pieces.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "elliptic/exactpoly.hpp"

namespace elliptic {

enum class ColoringRule : int { U = 0, V = 1, UInverted = 2, VInverted = 3 };

inline int phase(ColoringRule r) { return static_cast<int>(r); }

inline ColoringRule inverted(ColoringRule r) { return static_cast<ColoringRule>((phase(r) + 2) % 4); }

/// Rule seen by a sub-diagram whose vertex 1 is vertex (offset + 1) of the parent.
inline ColoringRule shifted_rule(ColoringRule r, int offset) {
    return static_cast<ColoringRule>(((phase(r) + offset) % 4 + 4) % 4);
}

inline bool is_black(int vertex, ColoringRule r) {
    const int m = ((vertex + phase(r)) % 4 + 4) % 4;
    return m == 1 || m == 2;
}

struct ChordDiagram {
    int half_size = 0;
    std::vector<std::pair<int, int>> chords;  // (left, right), 1-based, sorted by left

    int vertex_count() const { return 2 * half_size; }

    std::vector<int> partners() const {
        std::vector<int> p(vertex_count() + 1, 0);
        for (auto [a, b] : chords) {
            p[a] = b;
            p[b] = a;
        }
        return p;
    }

    bool is_perfect_matching() const {
        if (static_cast<int>(chords.size()) != half_size) return false;
        std::vector<int> seen(vertex_count() + 1, 0);
        for (auto [a, b] : chords) {
            if (a < 1 || b < 1 || a > vertex_count() || b > vertex_count() || a == b) return false;
            if (seen[a]++ || seen[b]++) return false;
        }
        return true;
    }

    bool is_planar() const {
        for (std::size_t i = 0; i < chords.size(); ++i) {
            for (std::size_t j = 0; j < chords.size(); ++j) {
                auto [a, b] = chords[i];
                auto [c, d] = chords[j];
                if (a < c && c < b && b < d) return false;
            }
        }
        return true;
    }

    friend bool operator==(const ChordDiagram&, const ChordDiagram&) = default;
};

namespace detail {

inline void planar_rec(std::vector<int>& partner, int lo, int hi,
                       const std::function<void()>& next) {
    if (lo > hi) {
        next();
        return;
    }
    for (int j = lo + 1; j <= hi; j += 2) {
        partner[lo] = j;
        partner[j] = lo;
        planar_rec(partner, lo + 1, j - 1, [&] { planar_rec(partner, j + 1, hi, next); });
    }
}

inline ChordDiagram diagram_from_partners(int m, const std::vector<int>& partner) {
    ChordDiagram d;
    d.half_size = m;
    d.chords.reserve(m);
    for (int v = 1; v <= 2 * m; ++v)
        if (partner[v] > v) d.chords.emplace_back(v, partner[v]);
    return d;
}

}  // namespace detail

inline constexpr int kMaxHalfSize = 10;

/// Visits every planar diagram on 2m vertices; m = 0 yields the empty diagram.
inline void for_each_planar(int m, const std::function<void(const ChordDiagram&)>& visit) {
    if (m < 0 || m > kMaxHalfSize) throw std::out_of_range("planar diagrams: half-size must be in [0, 10]");
    std::vector<int> partner(2 * m + 1, 0);
    detail::planar_rec(partner, 1, 2 * m, [&] { visit(detail::diagram_from_partners(m, partner)); });
}

inline std::vector<ChordDiagram> enumerate_planar(int m) {
    if (m < 1 || m > kMaxHalfSize)
        throw std::out_of_range("enumerate_planar: m must be in [1, 10], got " + std::to_string(m));
    std::vector<ChordDiagram> out;
    for_each_planar(m, [&](const ChordDiagram& d) { out.push_back(d); });
    return out;
}

inline int same_color_chords(const ChordDiagram& d, ColoringRule rule) {
    int l = 0;
    for (auto [a, b] : d.chords) l += is_black(a, rule) == is_black(b, rule);
    return l;
}

inline IntPolynomial diagram_weight(const ChordDiagram& d, ColoringRule rule) {
    if (!d.is_perfect_matching()) throw std::invalid_argument("diagram_weight: not a perfect matching");
    if (!d.is_planar()) throw std::invalid_argument("diagram_weight: weight is defined for planar diagrams only");
    return IntPolynomial::monomial(1, static_cast<std::size_t>(same_color_chords(d, rule)));
}

namespace detail {

// Exponent histogram -> polynomial.
inline IntPolynomial polynomial_from_counts(const std::vector<std::uint64_t>& counts) {
    std::vector<BigInt> cs(counts.begin(), counts.end());
    return IntPolynomial(std::move(cs));
}

}  // namespace detail

inline IntPolynomial partition_function(int m, ColoringRule rule) {
    std::vector<std::uint64_t> counts(m + 1, 0);
    for_each_planar(m, [&](const ChordDiagram& d) { ++counts[same_color_chords(d, rule)]; });
    return detail::polynomial_from_counts(counts);
}

/// Result of removing the chord at vertex 1: the diagram strictly inside it
/// and the diagram to its right, each with the coloring it inherits.
struct FirstChordSplit {
    ChordDiagram inner;
    ColoringRule inner_rule;
    ChordDiagram outer;
    ColoringRule outer_rule;
    bool first_chord_same_color;
};

inline FirstChordSplit split_at_first_chord(const ChordDiagram& d, ColoringRule rule) {
    if (d.half_size < 1) throw std::invalid_argument("split_at_first_chord: empty diagram");
    const auto partner = d.partners();
    const int p = partner[1];
    FirstChordSplit s;
    s.inner.half_size = (p - 2) / 2;
    s.outer.half_size = (d.vertex_count() - p) / 2;
    for (auto [a, b] : d.chords) {
        if (a == 1) continue;
        if (b < p)
            s.inner.chords.emplace_back(a - 1, b - 1);
        else
            s.outer.chords.emplace_back(a - p, b - p);
    }
    s.inner_rule = shifted_rule(rule, 1);
    s.outer_rule = shifted_rule(rule, p);
    s.first_chord_same_color = is_black(1, rule) == is_black(p, rule);
    return s;
}

/**
 * A diagram is decomposable when some proper closed contiguous interval of
 * 4l vertices (l >= 1) is immediately followed by a vertex that closes a
 * chord opened before the interval. Closed means every chord touching the
 * interval has both ends inside it.
 */
inline bool is_decomposable(const ChordDiagram& d) {
    const int nv = d.vertex_count();
    const auto partner = d.partners();
    for (int len = 4; len < nv; len += 4) {
        for (int start = 1; start + len <= nv; ++start) {
            const int stop = start + len - 1;
            const int follower = stop + 1;
            if (partner[follower] >= start) continue;
            bool closed = true;
            for (int v = start; v <= stop && closed; ++v) closed = partner[v] >= start && partner[v] <= stop;
            if (closed) return true;
        }
    }
    return false;
}

inline bool is_atomic(const ChordDiagram& d) { return !is_decomposable(d); }

/// Partition function of atomic U-rule diagrams on 4n vertices.
inline IntPolynomial atomic_partition_function(int n) {
    if (n < 1 || n > 5) throw std::out_of_range("atomic_partition_function: n must be in [1, 5]");
    std::vector<std::uint64_t> counts(2 * n + 1, 0);
    for_each_planar(2 * n, [&](const ChordDiagram& d) {
        if (is_atomic(d)) ++counts[same_color_chords(d, ColoringRule::U)];
    });
    return detail::polynomial_from_counts(counts);
}

/**
 * Exact (1/N) E Tr W^k for Gaussian entries as a polynomial in rho: the
 * returned numerator P satisfies (1/N) E Tr W^k = P(rho) / N^(2k+1).
 *
 * Every index tuple (i_0..i_{4k-1}) is visited and the product of its 4k
 * factors is expanded by Wick's formula over all pairings. Covariances:
 * E[X_ab X_ab] = 1 (diagonal included), E[X_ab X_ba] = rho for a != b,
 * everything else 0.
 */
inline IntPolynomial expected_trace_numerator(int k, int N) {
    if (k < 1 || N < 1) throw std::invalid_argument("expected_trace: need k >= 1 and N >= 1");
    const int nf = 4 * k;
    if (static_cast<double>(nf) * std::log10(static_cast<double>(N)) > 8.0 + 1e-12)
        throw std::out_of_range("expected_trace: N^(4k) exceeds the 1e8 brute-force budget");

    std::vector<int> idx(nf, 0);
    std::vector<std::pair<int, int>> fac(nf);
    std::vector<std::uint64_t> counts(2 * k + 1, 0);

    auto at = [&](int j) { return idx[j % nf]; };
    std::function<void(std::uint32_t, int)> wick = [&](std::uint32_t used, int power) {
        int i = 0;
        while (i < nf && (used >> i & 1u)) ++i;
        if (i == nf) {
            ++counts[power];
            return;
        }
        for (int j = i + 1; j < nf; ++j) {
            if (used >> j & 1u) continue;
            const auto [a, b] = fac[i];
            const auto [c, e] = fac[j];
            const std::uint32_t next = used | (1u << i) | (1u << j);
            if (a == c && b == e)
                wick(next, power);
            else if (a == e && b == c)
                wick(next, power + 1);
        }
    };

    for (;;) {
        for (int j = 0; j < k; ++j) {
            fac[4 * j + 0] = {at(4 * j), at(4 * j + 1)};
            fac[4 * j + 1] = {at(4 * j + 1), at(4 * j + 2)};
            fac[4 * j + 2] = {at(4 * j + 3), at(4 * j + 2)};
            fac[4 * j + 3] = {at(4 * j + 4), at(4 * j + 3)};
        }
        wick(0u, 0);
        int pos = 0;
        while (pos < nf && ++idx[pos] == N) idx[pos++] = 0;
        if (pos == nf) break;
    }
    return detail::polynomial_from_counts(counts);
}

inline double exact_expected_trace(int k, int N, double rho) {
    const IntPolynomial num = expected_trace_numerator(k, N);
    return evaluate(num, rho) / std::pow(static_cast<double>(N), 2 * k + 1);
}

}  // namespace elliptic
