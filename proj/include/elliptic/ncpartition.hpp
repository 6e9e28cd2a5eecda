#pragma once

/**
 * @file ncpartition.hpp
 * @brief Non-crossing partitions of types A and B, Kreweras complement,
 *        the abs projection, and the moment/free-cumulant relation.
 *
 * Type-B partitions live on [+-n] = {-1,...,-n, 1,...,n} ordered as
 * -1 < -2 < ... < -n < 1 < ... < n. Placing these 2n symbols on a circle in
 * that order turns negation into the half-turn p -> p + n, so NC^B(n) is
 * enumerated as the half-turn invariant members of NC(2n).
 */

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "elliptic/exactpoly.hpp"

namespace elliptic {

using Block = std::vector<int>;

struct NCPartitionA {
    int n = 0;
    std::vector<Block> blocks;  // canonical: elements ascending, blocks by minimum

    std::size_t block_count() const { return blocks.size(); }
    friend bool operator==(const NCPartitionA&, const NCPartitionA&) = default;
    friend auto operator<=>(const NCPartitionA&, const NCPartitionA&) = default;
};

struct NCPartitionB {
    int n = 0;
    std::vector<Block> blocks;  // canonical w.r.t. the type-B order

    friend bool operator==(const NCPartitionB&, const NCPartitionB&) = default;
};

namespace detail {

// Position in the type-B total order, 0-based.
inline int b_position(int x, int n) { return x < 0 ? -x - 1 : n + x - 1; }

inline void canonicalize(std::vector<Block>& blocks, const std::function<int(int)>& key) {
    for (auto& b : blocks) std::sort(b.begin(), b.end(), [&](int x, int y) { return key(x) < key(y); });
    std::sort(blocks.begin(), blocks.end(), [&](const Block& x, const Block& y) { return key(x[0]) < key(y[0]); });
}

// Stack discipline: element i either opens a block or joins a block on the
// stack, closing every block opened after it. This yields each non-crossing
// partition exactly once. labels[i] is the 0-based block id of element i.
inline void nc_rec(int i, int n, std::vector<int>& labels, std::vector<int>& stack, int next_label,
                   const std::function<void(const std::vector<int>&)>& visit) {
    if (i == n) {
        visit(labels);
        return;
    }
    for (std::size_t pos = 0; pos < stack.size(); ++pos) {
        std::vector<int> saved(stack.begin() + static_cast<std::ptrdiff_t>(pos) + 1, stack.end());
        labels[i] = stack[pos];
        stack.resize(pos + 1);
        nc_rec(i + 1, n, labels, stack, next_label, visit);
        stack.insert(stack.end(), saved.begin(), saved.end());
    }
    labels[i] = next_label;
    stack.push_back(next_label);
    nc_rec(i + 1, n, labels, stack, next_label + 1, visit);
    stack.pop_back();
}

inline std::vector<Block> blocks_from_labels(const std::vector<int>& labels, const std::function<int(int)>& element) {
    int nb = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<Block> blocks(nb);
    for (std::size_t p = 0; p < labels.size(); ++p) blocks[labels[p]].push_back(element(static_cast<int>(p)));
    return blocks;
}

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

inline NCPartitionA partition_from_sets(int n, DisjointSets& ds) {
    std::vector<Block> blocks;
    std::vector<int> slot(n + 1, -1);
    for (int i = 1; i <= n; ++i) {
        int r = ds.find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(blocks.size());
            blocks.emplace_back();
        }
        blocks[slot[r]].push_back(i);
    }
    return {n, std::move(blocks)};
}

}  // namespace detail

/// Calls visit(labels) for every non-crossing partition of {0..n-1}.
inline void for_each_nc_labels(int n, const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> labels(n, 0), stack;
    detail::nc_rec(0, n, labels, stack, 0, visit);
}

inline bool is_noncrossing(const std::vector<Block>& blocks, const std::function<int(int)>& key) {
    for (std::size_t x = 0; x < blocks.size(); ++x)
        for (std::size_t y = 0; y < blocks.size(); ++y) {
            if (x == y) continue;
            for (int p1 : blocks[x])
                for (int p2 : blocks[x])
                    for (int q1 : blocks[y])
                        for (int q2 : blocks[y]) {
                            int a = key(p1), b = key(q1), c = key(p2), d = key(q2);
                            if (a < b && b < c && c < d) return false;
                        }
        }
    return true;
}

inline bool is_noncrossing(const NCPartitionA& p) {
    return is_noncrossing(p.blocks, [](int x) { return x; });
}

inline bool is_noncrossing(const NCPartitionB& p) {
    const int n = p.n;
    return is_noncrossing(p.blocks, [n](int x) { return detail::b_position(x, n); });
}

inline constexpr int kMaxNCA = 10;
inline constexpr int kMaxNCB = 7;

inline void for_each_nca(int n, const std::function<void(const NCPartitionA&)>& visit) {
    for_each_nc_labels(n, [&](const std::vector<int>& labels) {
        visit(NCPartitionA{n, detail::blocks_from_labels(labels, [](int p) { return p + 1; })});
    });
}

inline std::vector<NCPartitionA> enumerate_nca(int n) {
    if (n < 1 || n > kMaxNCA) throw std::out_of_range("enumerate_nca: n must be in [1, 10], got " + std::to_string(n));
    std::vector<NCPartitionA> out;
    for_each_nca(n, [&](const NCPartitionA& p) { out.push_back(p); });
    return out;
}

inline void for_each_ncb(int n, const std::function<void(const NCPartitionB&)>& visit) {
    const int m = 2 * n;
    auto element = [n](int p) { return p < n ? -(p + 1) : p - n + 1; };
    auto key = [n](int x) { return detail::b_position(x, n); };
    std::vector<int> image;
    for_each_nc_labels(m, [&](const std::vector<int>& labels) {
        // half-turn invariance: label(p) -> label(p+n) must be a well-defined map
        const int nb = *std::max_element(labels.begin(), labels.end()) + 1;
        image.assign(nb, -1);
        for (int p = 0; p < m; ++p) {
            int& img = image[labels[p]];
            const int target = labels[(p + n) % m];
            if (img < 0)
                img = target;
            else if (img != target)
                return;
        }
        auto blocks = detail::blocks_from_labels(labels, element);
        detail::canonicalize(blocks, key);
        visit(NCPartitionB{n, std::move(blocks)});
    });
}

inline std::vector<NCPartitionB> enumerate_ncb(int n) {
    if (n < 1 || n > kMaxNCB) throw std::out_of_range("enumerate_ncb: n must be in [1, 7], got " + std::to_string(n));
    std::vector<NCPartitionB> out;
    for_each_ncb(n, [&](const NCPartitionB& p) { out.push_back(p); });
    return out;
}

inline bool is_zero_block(const Block& b) {
    for (int x : b)
        if (std::find(b.begin(), b.end(), -x) != b.end()) return true;
    return false;
}

inline bool has_zero_block(const NCPartitionB& p) {
    return std::any_of(p.blocks.begin(), p.blocks.end(), is_zero_block);
}

inline int nonzero_block_count(const NCPartitionB& p) {
    return static_cast<int>(std::count_if(p.blocks.begin(), p.blocks.end(), [](const Block& b) { return !is_zero_block(b); }));
}

/**
 * Kreweras complement: i and j (i < j) share a block of K(p) iff no block of
 * p contains k, l with k <= i < l <= j or i < k <= j < l.
 */
inline NCPartitionA kreweras(const NCPartitionA& p) {
    const int n = p.n;
    std::vector<int> label(n + 1, 0);
    for (std::size_t b = 0; b < p.blocks.size(); ++b)
        for (int x : p.blocks[b]) label[x] = static_cast<int>(b);
    detail::DisjointSets ds(n + 1);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            bool separated = false;
            for (int k = 1; k <= n && !separated; ++k)
                for (int l = k + 1; l <= n && !separated; ++l) {
                    if (label[k] != label[l]) continue;
                    separated = (k <= i && i < l && l <= j) || (i < k && k <= j && j < l);
                }
            if (!separated) ds.unite(i, j);
        }
    return detail::partition_from_sets(n, ds);
}

/// abs(p): i ~ j iff i ~ j or i ~ -j in p.
inline NCPartitionA abs_map(const NCPartitionB& p) {
    detail::DisjointSets ds(p.n + 1);
    for (const auto& b : p.blocks)
        for (int x : b) ds.unite(std::abs(x), std::abs(b.front()));
    return detail::partition_from_sets(p.n, ds);
}

/// Sum over NC(n) of t^{#blocks}; equals N^A_n.
inline IntPolynomial block_count_polynomial(int n) {
    std::vector<BigInt> cs(n + 1);
    for_each_nc_labels(n, [&](const std::vector<int>& labels) {
        ++cs[*std::max_element(labels.begin(), labels.end()) + 1];
    });
    return IntPolynomial(std::move(cs));
}

struct TypeBStatistics {
    IntPolynomial all;              // sum of t^{#nonzero blocks / 2} over NC^B(n)
    IntPolynomial with_zero_block;  // restricted to partitions with a zero block
    IntPolynomial without_zero_block;
    std::uint64_t count = 0;
};

inline TypeBStatistics type_b_statistics(int n) {
    if (n < 1 || n > kMaxNCB) throw std::out_of_range("type_b_statistics: n must be in [1, 7]");
    std::vector<BigInt> all(n + 1), zero(n + 1), nonzero(n + 1);
    TypeBStatistics s;
    for_each_ncb(n, [&](const NCPartitionB& p) {
        const int half = nonzero_block_count(p) / 2;
        ++all[half];
        ++(has_zero_block(p) ? zero : nonzero)[half];
        ++s.count;
    });
    s.all = IntPolynomial(std::move(all));
    s.with_zero_block = IntPolynomial(std::move(zero));
    s.without_zero_block = IntPolynomial(std::move(nonzero));
    return s;
}

/// Sum over zero-block members of NC^B(n) of t^{#nonzero blocks / 2}; equals Q_{n-1}.
inline IntPolynomial bstats_zero_block(int n) {
    if (n < 1 || n > 6) throw std::out_of_range("bstats_zero_block: n must be in [1, 6]");
    return type_b_statistics(n).with_zero_block;
}

/**
 * M_n = sum over pi in NC(n) of prod_{B in pi} c_{|B|}, by direct
 * enumeration. cumulants[s] holds c_s (index 0 is ignored).
 */
inline IntPolynomial moments_from_cumulants(const std::vector<IntPolynomial>& cumulants, int n) {
    if (n < 1 || n > kMaxNCA) throw std::out_of_range("moments_from_cumulants: n must be in [1, 10]");
    if (static_cast<int>(cumulants.size()) < n + 1)
        throw std::invalid_argument("moments_from_cumulants: cumulants for block sizes 1.." + std::to_string(n) +
                                    " are required");
    IntPolynomial total;
    std::vector<int> sizes;
    for_each_nc_labels(n, [&](const std::vector<int>& labels) {
        sizes.assign(n, 0);
        for (int l : labels) ++sizes[l];
        IntPolynomial term{1};
        for (int s : sizes) {
            if (s == 0) break;  // labels are dense, so the first empty slot ends the list
            term *= cumulants[s];
            if (term.is_zero()) return;
        }
        total += term;
    });
    return total;
}

namespace detail {

// Truncated power series with polynomial coefficients.
using Series = std::vector<IntPolynomial>;

inline Series series_mul(const Series& a, const Series& b, std::size_t len) {
    Series out(len);
    for (std::size_t i = 0; i < std::min(len, a.size()); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < len && j < b.size(); ++j)
            if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
    return out;
}

}  // namespace detail

/**
 * Inverts the moment/free-cumulant relation. Grouping the NC(n) sum by the
 * block that contains 1 gives M_n = sum_{s=1}^n c_s [z^{n-s}] M(z)^s with
 * M(z) = 1 + sum_m M_m z^m, which is triangular in c_n.
 *
 * moments[m] holds M_m for m = 1..n (index 0 is ignored). Returns c with
 * c[s] = c_s for s = 1..n and c[0] = 0.
 */
inline std::vector<IntPolynomial> cumulants_from_moments(const std::vector<IntPolynomial>& moments, int n) {
    if (n < 0) throw std::invalid_argument("cumulants_from_moments: n must be non-negative");
    if (static_cast<int>(moments.size()) < n + 1)
        throw std::invalid_argument("cumulants_from_moments: moments 1.." + std::to_string(n) + " are required");
    const std::size_t len = static_cast<std::size_t>(n) + 1;
    detail::Series m(len);
    m[0] = IntPolynomial{1};
    for (std::size_t i = 1; i < len; ++i) m[i] = moments[i];

    // powers[s] = M(z)^s truncated to degree n - s
    std::vector<detail::Series> powers(len);
    if (n >= 1) powers[1] = detail::Series(m.begin(), m.begin() + n);
    for (int s = 2; s <= n; ++s) powers[s] = detail::series_mul(powers[s - 1], m, static_cast<std::size_t>(n - s + 1));

    std::vector<IntPolynomial> c(len);
    for (int k = 1; k <= n; ++k) {
        IntPolynomial acc = m[k];
        for (int s = 1; s < k; ++s) acc -= c[s] * powers[s][k - s];
        c[k] = acc;
    }
    return c;
}

/// Forward relation through the same series identity; no enumeration, so
/// any n is fine.
inline std::vector<IntPolynomial> moments_from_cumulants_series(const std::vector<IntPolynomial>& cumulants, int n) {
    if (static_cast<int>(cumulants.size()) < n + 1)
        throw std::invalid_argument("moments_from_cumulants_series: cumulants 1.." + std::to_string(n) + " are required");
    std::vector<IntPolynomial> m(n + 1);
    m[0] = IntPolynomial{1};
    for (int k = 1; k <= n; ++k) {
        // [z^{k-s}] M^s only involves M_1..M_{k-1}
        detail::Series ms(m.begin(), m.begin() + k);
        detail::Series power{IntPolynomial{1}};
        IntPolynomial acc;
        for (int s = 1; s <= k; ++s) {
            power = detail::series_mul(power, ms, static_cast<std::size_t>(k));
            if (static_cast<std::size_t>(k - s) < power.size()) acc += cumulants[s] * power[k - s];
        }
        m[k] = acc;
    }
    return m;
}

/// Moments of the symmetrized law: m_{2k} = M_k, odd moments vanish. Index 0 holds 1.
inline std::vector<IntPolynomial> symmetrized_moments(const std::vector<IntPolynomial>& even_moments, int n) {
    std::vector<IntPolynomial> out(n + 1);
    out[0] = IntPolynomial{1};
    for (int m = 2; m <= n; m += 2) out[m] = even_moments.at(m / 2);
    return out;
}

}  // namespace elliptic
