#include "fixtures.hpp"
#include "tnarak/ppfan.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tnarak;
using fx::v;

static HomogPoly lin(std::initializer_list<long> c) { return HomogPoly::linear(v(c)); }

static std::size_t max_index(const Fan& f, std::vector<RatVec> gens) {
    std::sort(gens.begin(), gens.end());
    for (std::size_t i = 0; i < f.maximal().size(); ++i)
        if (f.generators(f.maximal()[i]) == gens) return i;
    throw std::runtime_error("no such cone");
}

static FanPtr f1fan() { return std::make_shared<const Fan>(recession_fan(fx::F1())); }
static FanPtr f3fan() { return std::make_shared<const Fan>(recession_fan(fx::F3())); }

TEST(MakePP, Examples) {
    auto F = f1fan();
    auto plus = max_index(*F, {v({1})}), minus = max_index(*F, {v({-1})});
    std::vector<HomogPoly> pcs(2, HomogPoly(1, 1));
    pcs[plus] = lin({1});
    EXPECT_NO_THROW(make_pp(F, pcs, 1));
    pcs[minus] = HomogPoly::constant(1, 1);
    try {
        make_pp(F, pcs, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, "DegreeMismatch");
    }
    auto C = fx::F2().cone_ptr();
    std::vector<HomogPoly> q(3, HomogPoly(2, 1));
    q[max_index(*C, {v({0, 1}), v({1, 1})})] = lin({-1, 1});
    q[max_index(*C, {v({-1, 0}), v({0, 1})})] = lin({0, 1});
    EXPECT_NO_THROW(make_pp(C, q, 1));
    q[max_index(*C, {v({1, 0}), v({1, 1})})] = lin({0, 1});
    try {
        make_pp(C, q, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, "FaceMismatch");
    }
}

TEST(Phi, RayF1) {
    auto F = f1fan();
    auto p = phi_ray(F, *F->find_ray(v({1})));
    EXPECT_EQ(p.piece(max_index(*F, {v({1})})), lin({1}));
    EXPECT_TRUE(p.piece(max_index(*F, {v({-1})})).is_zero());
}

TEST(Phi, RaysOnConeOverF2) {
    auto C = fx::F2().cone_ptr();
    auto a = max_index(*C, {v({0, 1}), v({1, 1})}), b = max_index(*C, {v({1, 0}), v({1, 1})}), c = max_index(*C, {v({-1, 0}), v({0, 1})});
    auto p = phi_ray(C, *C->find_ray(v({0, 1})));
    EXPECT_EQ(p.piece(a), lin({-1, 1}));
    EXPECT_EQ(p.piece(c), lin({0, 1}));
    EXPECT_TRUE(p.piece(b).is_zero());
    auto q = phi_ray(C, *C->find_ray(v({1, 1})));
    EXPECT_EQ(q.piece(a), lin({1, 0}));
    EXPECT_EQ(q.piece(b), lin({0, 1}));
    EXPECT_TRUE(q.piece(c).is_zero());
    auto s = phi_cone(C, *C->find_cone({*C->find_ray(v({0, 1})), *C->find_ray(v({1, 1}))}));
    EXPECT_EQ(s.piece(a), lin({1, 0}) * lin({-1, 1}));
    EXPECT_TRUE(s.piece(b).is_zero());
    EXPECT_EQ(pp_product(p, q), s);
    EXPECT_EQ(phi_cone(C, *C->find_cone({})), pp_constant(C, 1));
}

TEST(Phi, Algebra) {
    auto F = f1fan();
    auto p = phi_ray(F, 0), m = phi_ray(F, 1);
    EXPECT_TRUE(pp_product(p, m).is_zero());
    EXPECT_EQ(pp_add(p, p), pp_scale(2, p));
    auto bad = Fan::from_cones(2, {{v({1, 0}), v({1, 2})}});
    try {
        phi_ray(std::make_shared<const Fan>(bad), 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, "NotRegular");
    }
}

// Independent oracle: impose agreement at many lattice points of each common face.
static std::size_t brute_dim(const Fan& f, int k) {
    auto mons = monomials(f.dim(), k);
    std::size_t M = mons.size(), C = f.maximal().size();
    std::vector<RatVec> rows;
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> d(0, 7);
    for (auto& [i, j, tau] : f.adjacent_pairs()) {
        auto g = f.generators(tau);
        for (int s = 0; s < 4 * (int)M + 4; ++s) {
            RatVec pt(f.dim());
            for (auto& r : g) pt = pt + Rat(d(rng)) * r;
            RatVec row(M * C);
            for (std::size_t a = 0; a < M; ++a) {
                Rat val = HomogPoly::monomial(mons[a]).evaluate(pt);
                row[i * M + a] += val;
                row[j * M + a] -= val;
            }
            rows.push_back(row);
        }
    }
    return M * C - rank(rows, M * C);
}

TEST(GradedBasis, Dimensions) {
    auto F1 = f1fan(), F3 = f3fan();
    std::vector<std::size_t> d1, d3, b1, b3;
    for (int k = 0; k <= 3; ++k) {
        d1.push_back(graded_basis(F1, k).dim());
        d3.push_back(graded_basis(F3, k).dim());
        b1.push_back(brute_dim(*F1, k));
        b3.push_back(brute_dim(*F3, k));
    }
    EXPECT_EQ(d1, (std::vector<std::size_t>{1, 2, 2, 2}));
    // Hilbert series (1+t+t^2)/(1-t)^2
    EXPECT_EQ(d3, (std::vector<std::size_t>{1, 3, 6, 9}));
    EXPECT_EQ(b1, d1);
    EXPECT_EQ(b3, d3);
    EXPECT_EQ(graded_basis(fx::F3().cone_ptr(), 1).dim(), 4u);
    for (auto& f : graded_basis(F3, 2).basis) EXPECT_NO_THROW(validate_pp(f));
}

TEST(Maps, PullbackAndPushforward) {
    auto f1 = fx::F1(), f2 = fx::F2(), f5 = fx::F5();
    auto m21 = fan_map(*refines(f2, f1));
    auto C2 = f2.cone_ptr(), C1 = f1.cone_ptr();
    auto phi11 = phi_ray(C2, *C2->find_ray(v({1, 1})));
    auto phi01 = phi_ray(C2, *C2->find_ray(v({0, 1})));
    EXPECT_TRUE(pushforward(m21, phi11).is_zero());
    EXPECT_EQ(pushforward(m21, phi01), phi_ray(C1, *C1->find_ray(v({0, 1}))));
    auto id = fan_map(*refines(f2, f2));
    EXPECT_EQ(pullback(id, phi01), phi01);
    auto m52 = fan_map(*refines(f5, f2));
    auto pb = pullback(m52, phi01);
    EXPECT_NO_THROW(validate_pp(pb));
    // composites
    auto m51 = fan_map(*refines(f5, f1));
    auto g = phi_ray(C1, 0);
    EXPECT_EQ(pullback(m52, pullback(m21, g)), pullback(m51, g));
    auto C5 = f5.cone_ptr();
    auto h = pp_product(phi_ray(C5, 1), phi_ray(C5, 2));
    EXPECT_EQ(pushforward(m21, pushforward(m52, h)), pushforward(m51, h));
}

TEST(Maps, BirationalIdentityAndProjection) {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> c(-4, 4);
    auto f2 = fx::F2(), f5 = fx::F5();
    auto m = fan_map(*refines(f5, f2));
    auto C2 = f2.cone_ptr(), C5 = f5.cone_ptr();
    for (int k = 0; k <= 2; ++k) {
        auto B2 = graded_basis(C2, k), B5 = graded_basis(C5, 1);
        for (int s = 0; s < 10; ++s) {
            PPFunction x(C2, k);
            for (auto& b : B2.basis) x = pp_add(x, pp_scale(c(rng), b));
            EXPECT_EQ(pushforward(m, pullback(m, x)), x);
            PPFunction y(C5, 1);
            for (auto& b : B5.basis) y = pp_add(y, pp_scale(c(rng), b));
            EXPECT_EQ(pushforward(m, pp_product(pullback(m, x), y)), pp_product(x, pushforward(m, y)));
        }
    }
}

TEST(Maps, PullbackInjective) {
    auto f2 = fx::F2(), f5 = fx::F5();
    auto m = fan_map(*refines(f5, f2));
    for (int k = 0; k <= 2; ++k) {
        auto B = graded_basis(f2.cone_ptr(), k);
        std::vector<RatVec> rows;
        for (auto& b : B.basis) rows.push_back(pp_coeff_vector(pullback(m, b)));
        EXPECT_EQ(rank(rows, rows.empty() ? 0 : rows[0].size()), B.dim());
    }
}

TEST(FundamentalClass, SumIsT) {
    auto f3s = fx::F3sub();
    for (auto p : {fx::F1(), fx::F2(), fx::F5(), fx::H(), fx::F3(), f3s}) {
        auto C = p.cone_ptr();
        PPFunction s(C, 1);
        for (std::size_t v = 0; v < p.num_vertices(); ++v) s = pp_add(s, pp_scale(Rat(p.multiplicity(v)), phi_ray(C, p.vertex_ray(v))));
        EXPECT_EQ(s, pp_global(C, HomogPoly::linear(p.t_form())));
    }
}

TEST(Degree, Examples) {
    auto F = f1fan();
    EXPECT_EQ(degree(phi_ray(F, *F->find_ray(v({1})))), HomogPoly::constant(1, 1));
    EXPECT_TRUE(degree(pp_constant(F, 1)).is_zero());
    auto F3 = f3fan();
    for (auto m : F3->maximal()) EXPECT_EQ(degree(phi_cone(F3, m)), HomogPoly::constant(2, 1));
}
