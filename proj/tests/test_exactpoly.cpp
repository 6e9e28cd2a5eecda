#include <gtest/gtest.h>

#include <random>

#include "elliptic/exactpoly.hpp"
#include "elliptic/json_io.hpp"

using namespace elliptic;

TEST(IntPolynomial, AdditionAndCancellation) {
    EXPECT_EQ(IntPolynomial({1, 0, 1}) + IntPolynomial({0, 0, 1}), IntPolynomial({1, 0, 2}));
    const IntPolynomial p{1, 0, 4, 0, 1};
    EXPECT_EQ(p + IntPolynomial{}, p);
    const auto zero = p + IntPolynomial({-1, 0, -4, 0, -1});
    EXPECT_TRUE(zero.is_zero());
    EXPECT_TRUE(zero.coeffs().empty());
    EXPECT_EQ(zero.degree(), -1);
}

TEST(IntPolynomial, Multiplication) {
    const IntPolynomial a{1, 0, 1};
    EXPECT_EQ(a * a, IntPolynomial({1, 0, 2, 0, 1}));
    EXPECT_TRUE((a * IntPolynomial{}).is_zero());
    // 2 (1+r^2)^2 + (1+4r^2+r^4) = M_2
    EXPECT_EQ(a * a * BigInt(2) + IntPolynomial({1, 0, 4, 0, 1}), IntPolynomial({3, 0, 8, 0, 3}));
}

TEST(IntPolynomial, MultiplicationIsCommutativeAndAssociative) {
    std::mt19937_64 gen(12345);
    std::uniform_int_distribution<int> deg(0, 6), coef(-50, 50);
    auto random_poly = [&] {
        std::vector<BigInt> cs(deg(gen) + 1);
        for (auto& c : cs) c = coef(gen);
        return IntPolynomial(std::move(cs));
    };
    for (int i = 0; i < 1000; ++i) {
        const auto a = random_poly(), b = random_poly(), c = random_poly();
        ASSERT_EQ(a * b, b * a);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
    }
}

TEST(IntPolynomial, Reverse) {
    EXPECT_EQ(reverse(IntPolynomial({1, 6, 3}), 3), IntPolynomial({0, 3, 6, 1}));
    EXPECT_EQ(reverse(IntPolynomial{1}, 0), IntPolynomial{1});
    EXPECT_EQ(reverse(IntPolynomial({1, 4, 1}), 2), IntPolynomial({1, 4, 1}));
    EXPECT_THROW(reverse(IntPolynomial({1, 2, 3}), 1), std::invalid_argument);
}

TEST(IntPolynomial, Evaluate) {
    const IntPolynomial m1{1, 0, 1};
    EXPECT_EQ(evaluate(m1, 0.0), 1.0);
    EXPECT_EQ(evaluate(m1, 1.0), 2.0);
    EXPECT_EQ(evaluate(IntPolynomial{}, 0.7), 0.0);
    EXPECT_EQ(evaluate_exact(IntPolynomial({55, 0, 352, 0, 616, 0, 352, 0, 55}), 1), BigInt(1430));
}

TEST(IntPolynomial, BigCoefficientsStayExact) {
    // Catalan(40) overflows 64 bits
    EXPECT_EQ(catalan(40).str(), "2622127042276492108820");
    EXPECT_EQ(catalan(60).str(), "1583850964596120042686772779038896");
}

TEST(Narayana, SmallCases) {
    EXPECT_EQ(narayana_a(0), IntPolynomial{1});
    EXPECT_EQ(narayana_a(1), IntPolynomial({0, 1}));
    EXPECT_EQ(narayana_a(3), IntPolynomial({0, 1, 3, 1}));
    EXPECT_EQ(narayana_b(0), IntPolynomial{1});
    EXPECT_EQ(narayana_b(2), IntPolynomial({1, 4, 1}));
    EXPECT_EQ(q_poly(0), IntPolynomial{1});
    EXPECT_EQ(q_poly(2), IntPolynomial({1, 6, 3}));
}

TEST(Narayana, Invariants) {
    for (unsigned n = 0; n <= 12; ++n) {
        const auto b = narayana_b(n);
        for (unsigned k = 0; k <= n; ++k) EXPECT_EQ(b.coeff(k), binomial(n, k) * binomial(n, k)) << n << ' ' << k;
        EXPECT_TRUE(is_palindromic(b, n));
        EXPECT_EQ(reverse(b, n), b);
    }
    for (unsigned n = 0; n <= 10; ++n) {
        EXPECT_EQ(evaluate_exact(narayana_a(n), 1), catalan(n));
        EXPECT_EQ(evaluate_exact(narayana_b(n), 1), binomial(2 * n, n));
    }
    for (unsigned m = 0; m <= 10; ++m) EXPECT_EQ(q_poly(m), derivative(narayana_a(m + 1)));
}

TEST(Sequences, FussCatalanAndEvenCatalan) {
    const long long fc[] = {1, 1, 3, 12, 55, 273, 1428};
    const long long ec[] = {1, 2, 14, 132, 1430, 16796};
    for (unsigned k = 0; k < 7; ++k) EXPECT_EQ(fuss_catalan(k), BigInt(fc[k]));
    for (unsigned k = 0; k < 6; ++k) EXPECT_EQ(even_catalan(k), BigInt(ec[k]));
}

TEST(Json, RoundTripUsesDecimalStrings) {
    const IntPolynomial p({BigInt("123456789012345678901234567890"), BigInt(-3), BigInt(0), BigInt(7)});
    const nlohmann::json j = p;
    EXPECT_EQ(j.dump(), R"({"coeffs":["123456789012345678901234567890","-3","0","7"]})");
    EXPECT_EQ(j.get<IntPolynomial>(), p);
    EXPECT_EQ(nlohmann::json(IntPolynomial{}).dump(), R"({"coeffs":[]})");
}
