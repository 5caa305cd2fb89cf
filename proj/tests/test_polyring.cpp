#include "tnarak/polyring.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tnarak;

static HomogPoly X(std::size_t d, std::size_t i) { return HomogPoly::variable(d, i); }

TEST(Poly, Products) {
    auto x = X(2, 0), t = X(2, 1);
    EXPECT_EQ(x * x, HomogPoly::monomial({2, 0}));
    EXPECT_EQ((x + t) * (x - t), x * x - t * t);
}

static HomogPoly random_poly(std::mt19937& rng, std::size_t d, int k) {
    std::uniform_int_distribution<int> c(-5, 5);
    HomogPoly p(d, k);
    for (auto& e : monomials(d, k)) p.add_term(e, c(rng));
    return p;
}

TEST(Poly, RandomProductByEvaluation) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> c(-7, 7);
    auto p = random_poly(rng, 3, 3), q = random_poly(rng, 3, 2);
    auto pq = p * q;
    EXPECT_EQ(pq.degree(), 5);
    for (int i = 0; i < 6; ++i) {
        RatVec pt = {rat(c(rng), 3), rat(c(rng), 5), Rat(c(rng))};
        EXPECT_EQ(pq.evaluate(pt), p.evaluate(pt) * q.evaluate(pt));
    }
}

TEST(Poly, RingAxiomsSampled) {
    std::mt19937 rng(5);
    for (int i = 0; i < 10; ++i) {
        auto a = random_poly(rng, 2, 1), b = random_poly(rng, 2, 2), c = random_poly(rng, 2, 2);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
    }
}

TEST(Poly, AddDegreeMismatch) {
    try {
        auto r = X(1, 0) + HomogPoly::constant(1, 1);
        FAIL() << r.str();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, "DegreeMismatch");
    }
}

TEST(EqualOnSpan, Examples) {
    auto x = X(2, 0), t = X(2, 1);
    EXPECT_TRUE(equal_on_span(x * x, t * t, {2, {{1, 1}}}));
    EXPECT_TRUE(equal_on_span(x, HomogPoly(2, 1), {2, {{0, 1}}}));
    EXPECT_FALSE(equal_on_span(x * x, x * t, {2, {{1, 2}}}));
    EXPECT_TRUE(equal_on_span(x * t, x * t, {2, {}}));
    // monotone: equal on a plane implies equal on a line inside it
    auto p = x * x + t * t, q = HomogPoly(2, 2) + Rat(2) * x * t;
    EXPECT_TRUE(equal_on_span(p, q, {2, {{1, 1}}}));
    EXPECT_FALSE(equal_on_span(p, q, {2, {{1, 1}, {1, 0}}}));
}

TEST(RatFunSum, Examples) {
    auto x = X(1, 0);
    EXPECT_EQ(ratfun_sum_to_poly({{x, {{1}}}}, 1), HomogPoly::constant(1, 1));
    EXPECT_EQ(ratfun_sum_to_poly({{x, {{1}}}, {HomogPoly(1, 1), {{-1}}}}, 1), HomogPoly::constant(1, 1));
    EXPECT_TRUE(ratfun_sum_to_poly({{HomogPoly::constant(1, 1), {{1}}}, {HomogPoly::constant(1, 1), {{-1}}}}, 1).is_zero());
}

TEST(RatFunSum, NotPolynomial) {
    try {
        ratfun_sum_to_poly({{HomogPoly::constant(1, 1), {{1}}}}, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, "NotPolynomial");
    }
}

TEST(RatFunSum, P2Localization) {
    // 1 / (dual forms) summed over the three maximal cones of P^2 cancels
    std::vector<RatVec> A = {{1, 0}, {0, 1}}, B = {{-1, 1}, {-1, 0}}, C = {{1, -1}, {0, -1}};
    std::vector<RatFun> ones;
    for (auto& den : {A, B, C}) ones.push_back({HomogPoly::constant(2, 1), den});
    EXPECT_TRUE(ratfun_sum_to_poly(ones, 2).is_zero());
}
