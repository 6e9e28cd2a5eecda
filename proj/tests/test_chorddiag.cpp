#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "elliptic/chorddiag.hpp"
#include "elliptic/momentrec.hpp"

using namespace elliptic;

namespace {

ChordDiagram make(int m, std::vector<std::pair<int, int>> chords) { return ChordDiagram{m, std::move(chords)}; }

// hand count of (1/N) E Tr W over the three Wick pairings of X_ij X_jk X_ij' X_j'k
double trace_oracle(int N, double rho) {
    const double n = N;
    return (n * n * n + 2 * n + 2 * n * (n - 1) * rho + n * n * (n - 1) * rho * rho) / (n * n * n);
}

}  // namespace

TEST(Planar, SmallEnumerations) {
    const auto one = enumerate_planar(1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], make(1, {{1, 2}}));
    const auto two = enumerate_planar(2);
    ASSERT_EQ(two.size(), 2u);
    EXPECT_NE(std::find(two.begin(), two.end(), make(2, {{1, 2}, {3, 4}})), two.end());
    EXPECT_NE(std::find(two.begin(), two.end(), make(2, {{1, 4}, {2, 3}})), two.end());
    EXPECT_EQ(enumerate_planar(5).size(), 42u);
    EXPECT_THROW(enumerate_planar(11), std::out_of_range);
}

TEST(Planar, CountsAreCatalanAndAllPlanar) {
    for (int m = 1; m <= 8; ++m) {
        std::set<std::vector<std::pair<int, int>>> seen;
        for (const auto& d : enumerate_planar(m)) {
            ASSERT_TRUE(d.is_perfect_matching());
            ASSERT_TRUE(d.is_planar());
            seen.insert(d.chords);
        }
        EXPECT_EQ(BigInt(seen.size()), catalan(m)) << m;
    }
}

TEST(Weights, HandColorings) {
    EXPECT_EQ(diagram_weight(make(2, {{1, 2}, {3, 4}}), ColoringRule::U), IntPolynomial({0, 0, 1}));
    EXPECT_EQ(diagram_weight(make(2, {{1, 4}, {2, 3}}), ColoringRule::U), IntPolynomial{1});
    // V-rule colors vertex 1 black and vertex 2 white; V_1 = 1 is also what
    // U_2 = V_1 + rho^2 = 1 + rho^2 needs
    EXPECT_EQ(partition_function(1, ColoringRule::V), IntPolynomial{1});
    EXPECT_EQ(partition_function(1, ColoringRule::U), IntPolynomial({0, 1}));
    EXPECT_EQ(partition_function(2, ColoringRule::U), IntPolynomial({1, 0, 1}));
    EXPECT_EQ(partition_function(4, ColoringRule::U), IntPolynomial({3, 0, 8, 0, 3}));
    EXPECT_THROW(diagram_weight(make(2, {{1, 3}, {2, 4}}), ColoringRule::U), std::invalid_argument);
}

TEST(Weights, InversionPreservesWeight) {
    for (int m = 1; m <= 6; ++m)
        for (const auto& d : enumerate_planar(m))
            for (auto r : {ColoringRule::U, ColoringRule::V})
                ASSERT_EQ(same_color_chords(d, r), same_color_chords(d, inverted(r)));
}

TEST(Weights, PartitionFunctionsMatchRecurrence) {
    const auto t = build_uv(10);
    for (int m = 1; m <= 10; ++m) {
        EXPECT_EQ(partition_function(m, ColoringRule::U), t.u_polys[m]) << m;
        EXPECT_EQ(partition_function(m, ColoringRule::V), t.v_polys[m]) << m;
    }
}

// Removing the first chord leaves an inner piece and an outer piece whose
// weights multiply back to the original.
TEST(Splitting, FirstChordSplitIsMultiplicative) {
    for (int m = 1; m <= 8; ++m)
        for (auto rule : {ColoringRule::U, ColoringRule::V})
            for (const auto& d : enumerate_planar(m)) {
                const auto s = split_at_first_chord(d, rule);
                ASSERT_TRUE(s.inner.is_perfect_matching() && s.outer.is_perfect_matching());
                const int whole = same_color_chords(d, rule);
                const int parts = same_color_chords(s.inner, s.inner_rule) + same_color_chords(s.outer, s.outer_rule) +
                                  (s.first_chord_same_color ? 1 : 0);
                ASSERT_EQ(whole, parts);
                // the inner piece starts at vertex 2, so it is colored by the shifted rule
                ASSERT_EQ(s.inner_rule, shifted_rule(rule, 1));
            }
}

TEST(Atomic, PartitionFunctionIsNarayanaB) {
    EXPECT_EQ(atomic_partition_function(1), IntPolynomial({1, 0, 1}));
    EXPECT_EQ(atomic_partition_function(2), IntPolynomial({1, 0, 4, 0, 1}));
    EXPECT_EQ(atomic_partition_function(3), IntPolynomial({1, 0, 9, 0, 9, 0, 1}));
    EXPECT_EQ(atomic_partition_function(4), substitute_square(narayana_b(4)));
    EXPECT_EQ(atomic_partition_function(5), substitute_square(narayana_b(5)));
}

TEST(Atomic, Decomposability) {
    // the interval 2..5 is closed and vertex 6 closes the chord opened at 1
    EXPECT_TRUE(is_decomposable(make(4, {{1, 6}, {2, 3}, {4, 5}, {7, 8}})));
    EXPECT_TRUE(is_atomic(make(2, {{1, 4}, {2, 3}})));
    EXPECT_TRUE(is_atomic(make(2, {{1, 2}, {3, 4}})));
}

TEST(ExactTrace, ScalarCaseIsFourthMoment) {
    for (double rho : {-1.0, 0.0, 0.3, 1.0}) EXPECT_DOUBLE_EQ(exact_expected_trace(1, 1, rho), 3.0);
    EXPECT_EQ(expected_trace_numerator(2, 1), IntPolynomial{105});  // E X^8
}

TEST(ExactTrace, MatchesHandCountedWickSum) {
    for (int N = 1; N <= 8; ++N)
        for (double rho : {-0.5, 0.0, 0.3, 0.5, 1.0})
            EXPECT_NEAR(exact_expected_trace(1, N, rho), trace_oracle(N, rho), 1e-13) << N << ' ' << rho;
    EXPECT_THROW(expected_trace_numerator(1, 200), std::out_of_range);
}

TEST(ExactTrace, LargeNLimitIsFirstMoment) {
    // exact polynomial in N, so the limit is read off the hand count
    EXPECT_NEAR(trace_oracle(1 << 20, 0.5), 1.25, 1e-5);
    EXPECT_NEAR(exact_expected_trace(2, 3, 0.0), 2085.0 / 243.0, 1e-12);
}

// The three-bracket example formula is compared, not asserted: it differs
// from the exact count at order 1/N. Both tend to 1 + rho^2.
TEST(ExactTrace, ThreeBracketFormulaComparison) {
    for (int N = 2; N <= 8; ++N)
        for (double rho : {0.0, 0.5, -0.5, 1.0}) {
            const double n = N;
            const double bracket = (rho * rho + 2 * rho / n + 1 / (n * n)) + (rho * rho / n + (2 * rho + 1) / (n * n)) +
                                   (1 + 2 * rho / n + rho * rho / (n * n));
            const double exact = exact_expected_trace(1, N, rho);
            if (std::abs(bracket - exact) > 1e-12)
                std::printf("[three-bracket] N=%d rho=%+.1f exact=%.6f formula=%.6f diff=%+.6f\n", N, rho, exact, bracket,
                            bracket - exact);
            EXPECT_LT(std::abs(bracket - exact), 12.0 / n);
        }
}
