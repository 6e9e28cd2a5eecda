#include <gtest/gtest.h>

#include "elliptic/chorddiag.hpp"
#include "elliptic/momentrec.hpp"
#include "elliptic/ncpartition.hpp"

using namespace elliptic;

TEST(MomentTable, InitialAndFirstMoments) {
    const auto t0 = build_uv(0);
    EXPECT_EQ(t0.u_polys.at(0), IntPolynomial{1});
    EXPECT_EQ(t0.v_polys.at(0), IntPolynomial{1});
    EXPECT_EQ(build_uv(2).u_polys[2], IntPolynomial({1, 0, 1}));
    EXPECT_EQ(build_uv(8).u_polys[8], IntPolynomial({55, 0, 352, 0, 616, 0, 352, 0, 55}));
    EXPECT_THROW(build_uv(-1), std::invalid_argument);
}

TEST(MomentTable, MomentPolynomials) {
    const auto t = build_uv(6);
    EXPECT_EQ(moment_polynomial(t, 0), IntPolynomial{1});
    EXPECT_EQ(moment_polynomial(t, 2), IntPolynomial({3, 0, 8, 0, 3}));
    EXPECT_EQ(moment_polynomial(t, 3), IntPolynomial({12, 0, 54, 0, 54, 0, 12}));
    EXPECT_THROW(moment_polynomial(t, 4), std::out_of_range);
}

TEST(MomentTable, Values) {
    const auto t = build_uv(10);
    const auto at0 = moment_values(t, 0.0, 5);
    const double fc[] = {1, 1, 3, 12, 55, 273};
    for (int k = 0; k <= 5; ++k) EXPECT_EQ(at0[k], fc[k]);
    const auto at1 = moment_values(t, 1.0, 4);
    const double ec[] = {1, 2, 14, 132, 1430};
    for (int k = 0; k <= 4; ++k) EXPECT_EQ(at1[k], ec[k]);
    EXPECT_DOUBLE_EQ(moment_values(t, 0.5, 1)[1], 1.25);
    EXPECT_THROW(moment_values(t, 1.5, 1), std::invalid_argument);
}

TEST(MomentTable, EndpointSequencesAndPalindromes) {
    const auto t = build_uv(20);
    for (unsigned k = 0; k <= 10; ++k) {
        const auto& m = t.u_polys[2 * k];
        EXPECT_EQ(evaluate_exact(m, 0), binomial(3 * k, k) / (2 * k + 1));
        EXPECT_EQ(evaluate_exact(m, 1), binomial(4 * k, 2 * k) / (2 * k + 1));
        EXPECT_TRUE(is_palindromic(m, 2 * k)) << "M_" << k;
    }
    for (unsigned k = 0; k <= 20; ++k) {
        EXPECT_EQ(evaluate_exact(t.u_polys[k], 1), catalan(k));
        EXPECT_EQ(evaluate_exact(t.v_polys[k], 1), catalan(k));
    }
}

TEST(MomentTable, AgreesWithDiagramsUpToSix) {
    const auto t = build_uv(12);
    for (int k = 1; k <= 5; ++k) {
        EXPECT_EQ(partition_function(2 * k, ColoringRule::U), t.u_polys[2 * k]);
        EXPECT_EQ(partition_function(2 * k, ColoringRule::V), t.v_polys[2 * k]);
        EXPECT_EQ(partition_function(2 * k - 1, ColoringRule::U), t.u_polys[2 * k - 1]);
        EXPECT_EQ(partition_function(2 * k - 1, ColoringRule::V), t.v_polys[2 * k - 1]);
    }
}

TEST(MomentTable, AgreesWithTypeBCumulants) {
    const auto t = build_uv(12);
    std::vector<IntPolynomial> c(13);
    for (int n = 1; n <= 6; ++n) c[2 * n] = substitute_square(narayana_b(n));
    for (int k = 1; k <= 5; ++k) EXPECT_EQ(moments_from_cumulants(c, 2 * k), t.u_polys[2 * k]);
    EXPECT_EQ(moments_from_cumulants_series(c, 12)[12], t.u_polys[12]);
}
