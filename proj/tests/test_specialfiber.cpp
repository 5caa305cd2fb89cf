#include "fixtures.hpp"
#include "tnarak/specialfiber.hpp"

#include <gtest/gtest.h>

using namespace tnarak;
using fx::v;

static HomogPoly X1() { return HomogPoly::variable(1, 0); }
static HomogPoly Z1() { return HomogPoly(1, 1); }

struct F2Cells {
    std::size_t left, seg, right;  // (-inf,0], [0,1], [1,inf)
    explicit F2Cells(const PolyComplex& p)
        : left(fx::cell(p, {v({-1, 0}), v({0, 1})})), seg(fx::cell(p, {v({0, 1}), v({1, 1})})), right(fx::cell(p, {v({1, 0}), v({1, 1})})) {}
};

class SF : public ::testing::Test {
protected:
    ModelPtr f1 = make_model(fx::F1()), f2 = make_model(fx::F2()), f5 = make_model(fx::F5()), h = make_model(fx::H()),
             f3 = make_model(fx::F3()), f3s = make_model(fx::F3sub());
    std::vector<ModelPtr> reduced() const { return {f1, f2, f5, f3, f3s}; }
    std::vector<ModelPtr> all() const { return {f1, f2, f5, h, f3, f3s}; }
};

TEST_F(SF, AffineExamples) {
    F2Cells c(*f2->pi);
    std::vector<HomogPoly> p(3, X1());
    EXPECT_NO_THROW(make_affine_pp(f2, p, 1));
    p[c.left] = Z1();
    EXPECT_NO_THROW(make_affine_pp(f2, p, 1));
    std::vector<HomogPoly> q(3, HomogPoly::constant(1, 1));
    q[c.seg] = HomogPoly::constant(1, 2);
    try {
        make_affine_pp(f2, q, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, "FacetMismatch");
    }
}

TEST_F(SF, AffineDims) {
    EXPECT_EQ(dim_affine_pp(f2, 0), 1u);
    EXPECT_EQ(dim_affine_pp(f2, 1), 3u);
    EXPECT_EQ(dim_affine_pp(f2, 2), 3u);
    EXPECT_EQ(dim_affine_pp(f1, 1), 2u);
}

TEST_F(SF, VertexTupleReading) {
    auto t = to_vertex_tuple(affine_global(f2, X1()));
    for (auto& f : t.f)
        for (auto& p : f.pieces()) EXPECT_EQ(p, X1());
    EXPECT_TRUE(from_vertex_tuple(t));
    VertexTuple bad(f2, 1);
    auto& ch = f2->charts[0];
    for (std::size_t i = 0; i < ch.fan.maximal().size(); ++i)
        if (ch.fan.generators(ch.fan.maximal()[i]) == std::vector<RatVec>{v({1})}) bad.f[0].set_piece(i, X1());
    EXPECT_FALSE(from_vertex_tuple(bad));
    try {
        affine_from_vertex_tuple(bad);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, "NotInKernel");
    }
    EXPECT_TRUE(from_vertex_tuple(VertexTuple(f2, 2))->is_zero());
}

TEST_F(SF, RhoExamples) {
    F2Cells c(*f2->pi);
    EXPECT_TRUE(rho(to_vertex_tuple(affine_global(f2, X1()))).is_zero());
    auto r = rho(vertex_class(f2, 0));
    ASSERT_EQ(r.e.size(), 1u);
    ASSERT_EQ(f2->edge_cells[0], std::vector<std::size_t>{c.seg});
    EXPECT_EQ(r.e[0][0], HomogPoly::constant(1, -1));
    VertexTuple t(f2, 1);
    t.f[1].set_piece(f2->chart_piece(1, c.seg), Rat(3) * X1());
    EXPECT_EQ(rho(t).e[0][0], Rat(3) * X1());
}

TEST_F(SF, GammaExample) {
    F2Cells c(*f2->pi);
    EdgeTuple e(f2, 0);
    e.e[0][0] = HomogPoly::constant(1, 1);
    auto g = gamma(e);
    // chart at 1: [0,1] is R<=0 with dual form -x; chart at 0: [0,1] is R>=0 with form x
    EXPECT_EQ(g.f[1].piece(f2->chart_piece(1, c.seg)), -X1());
    EXPECT_TRUE(g.f[1].piece(f2->chart_piece(1, c.right)).is_zero());
    EXPECT_EQ(g.f[0].piece(f2->chart_piece(0, c.seg)), -X1());
    EXPECT_TRUE(g.f[0].piece(f2->chart_piece(0, c.left)).is_zero());
    EXPECT_TRUE(gamma(EdgeTuple(f2, 1)).is_zero());
}

TEST_F(SF, DdcExamples) {
    F2Cells c(*f2->pi);
    auto d = ddc_model(vertex_class(f2, 0));
    EXPECT_EQ(d.f[0].piece(f2->chart_piece(0, c.seg)), -X1());
    EXPECT_TRUE(d.f[0].piece(f2->chart_piece(0, c.left)).is_zero());
    EXPECT_EQ(d.f[1].piece(f2->chart_piece(1, c.seg)), -X1());
    EXPECT_TRUE(d.f[1].piece(f2->chart_piece(1, c.right)).is_zero());
    EXPECT_EQ(ddc_closed_form(vertex_class(f2, 0)), d);
    std::mt19937 rng(1);
    for (int k = 0; k <= 2; ++k) EXPECT_TRUE(ddc_model(sample_vertex_tuple(f1, k, rng)).is_zero());
}

TEST_F(SF, ClosedFormAgreesOnSamples) {
    std::mt19937 rng(2);
    for (auto& m : all())
        for (int k = 0; k <= 2; ++k)
            for (int s = 0; s < 5; ++s) {
                auto t = sample_vertex_tuple(m, k, rng);
                EXPECT_EQ(ddc_closed_form(t), ddc_model(t));
            }
}

TEST_F(SF, SingleVertexSupported) {
    // t supported at one vertex w: at w the result is -sum phi_{w,gamma} f_w, at a neighbour v it is phi_{v,gamma} f_w
    auto t = vertex_class(f5, 1);
    auto d = ddc_model(t);
    auto& m = *f5;
    for (std::size_t g = 0; g < m.num_edges(); ++g) {
        auto& ed = m.edges[g];
        std::size_t other = ed.v1 == 1 ? ed.v2 : ed.v1;
        if (ed.v1 != 1 && ed.v2 != 1) continue;
        for (auto c : m.edge_cells[g]) {
            EXPECT_EQ(d.f[other].piece(m.chart_piece(other, c)), HomogPoly::linear(m.edge_form(g, other, c)));
            EXPECT_EQ(d.f[1].piece(m.chart_piece(1, c)), -HomogPoly::linear(m.edge_form(g, 1, c)));
        }
    }
}

TEST_F(SF, IotaExamples) {
    F2Cells c(*f2->pi);
    auto C = f2->cone;
    auto phi01 = phi_ray(C, *C->find_ray(v({0, 1})));
    auto u = iota_upper(f2, phi01);
    EXPECT_EQ(u.piece(c.seg), -X1());
    EXPECT_TRUE(u.piece(c.left).is_zero());
    EXPECT_TRUE(u.piece(c.right).is_zero());
    EXPECT_EQ(to_vertex_tuple(u), ddc_model(vertex_class(f2, 0)));
    EXPECT_EQ(iota_lower(vertex_class(f2, 0)), phi01);
    EXPECT_TRUE(iota_lower(VertexTuple(f2, 1)).is_zero());
    auto t2 = pp_global(C, HomogPoly::monomial({0, 2}));
    EXPECT_TRUE(iota_upper(f2, t2).is_zero());
    // canonical model: height-0 slice is the fan itself
    auto F = phi_ray(f1->cone, *f1->cone->find_ray(v({1, 0})));
    auto r = iota_upper(f1, F);
    auto plus = fx::cell(*f1->pi, {v({0, 1}), v({1, 0})});
    EXPECT_EQ(r.piece(plus), X1());
}

TEST_F(SF, IotaCompositeIsDdcOnReducedModels) {
    std::mt19937 rng(3);
    for (auto& m : reduced())
        for (int k = 0; k <= 2; ++k)
            for (int s = 0; s < 5; ++s) {
                auto t = sample_vertex_tuple(m, k, rng);
                EXPECT_EQ(to_vertex_tuple(iota_upper(m, iota_lower(t))), ddc_model(t));
            }
}

TEST_F(SF, IotaCompositeDiffersOnNonReducedFiber) {
    // vertex 1/2 has multiplicity 2; there the composite is -gamma rho divided by m_v
    auto t = vertex_class(h, 1);
    auto lhs = to_vertex_tuple(iota_upper(h, iota_lower(t)));
    auto rhs = ddc_model(t);
    EXPECT_FALSE(lhs == rhs);
    for (std::size_t w = 0; w < h->num_vertices(); ++w) {
        auto m = h->pi->multiplicity(w);
        EXPECT_EQ(pp_scale(Rat(m), lhs.f[w]), rhs.f[w]) << w;
    }
}

TEST_F(SF, IotaLowerOnGammaImage) {
    std::mt19937 rng(4);
    // zero in degree 0 on reduced models; in general only divisible by t, so it restricts to zero
    for (auto& m : reduced()) EXPECT_TRUE(iota_lower(gamma(sample_edge_tuple(m, 0, rng))).is_zero());
    for (auto& m : all())
        for (int k = 0; k <= 2; ++k) EXPECT_TRUE(iota_upper(m, iota_lower(gamma(sample_edge_tuple(m, k, rng)))).is_zero()) << "k=" << k;
    EdgeTuple e(f2, 1);
    for (auto& p : e.e[0]) p = X1();
    EXPECT_FALSE(iota_lower(gamma(e)).is_zero());
}

TEST_F(SF, ImageOfDdcInKerRho) {
    std::mt19937 rng(5);
    for (auto& m : reduced())
        for (int k = 0; k <= 2; ++k) EXPECT_TRUE(rho(ddc_model(sample_vertex_tuple(m, k, rng))).is_zero()) << "k=" << k;
    EXPECT_FALSE(rho(ddc_model(vertex_class(h, 1))).is_zero());
}

TEST_F(SF, Cap) {
    std::mt19937 rng(6);
    auto f = sample_affine(f2, 1, rng);
    EXPECT_EQ(cap_fundamental(f), to_vertex_tuple(f));
    auto g = affine_global(h, HomogPoly::constant(1, 1));
    auto c = cap_fundamental(g);
    EXPECT_EQ(c.f[1], pp_constant(h->chart_fans[1], 2));
    EXPECT_TRUE(cap_fundamental(AffinePP(h, 0)).is_zero());
}

TEST_F(SF, Homology) {
    auto a = vertex_class(f2, 0), b = vertex_class(f2, 1);
    EXPECT_FALSE(class_equal(a, b));
    EXPECT_FALSE(class_equal(a, VertexTuple(f2, 0)));
    EXPECT_FALSE(class_equal(b, VertexTuple(f2, 0)));
    std::mt19937 rng(7);
    auto e = sample_edge_tuple(f2, 0, rng);
    EXPECT_TRUE(class_equal(gamma(e), VertexTuple(f2, 1)));
    auto hp = homology_presentation(f1, 1);
    EXPECT_EQ(hp.dim, vertex_layer_basis(f1, 1).size());
}

TEST_F(SF, Exactness) {
    for (auto& m : all())
        for (int k = 0; k <= 3; ++k) {
            auto r = exactness_report(m, k);
            EXPECT_TRUE(r.ok()) << "k=" << k;
        }
}

TEST_F(SF, KerCoker) {
    auto r = ker_coker_report(f2, 1);
    EXPECT_EQ(r.dim_ker, 2u);
    EXPECT_EQ(r.dim_coker, 2u);
    EXPECT_EQ(r.dim_pp, 2u);
    for (auto& m : reduced())
        for (int k = 0; k <= 2; ++k) EXPECT_TRUE(ker_coker_report(m, k).equal()) << "k=" << k;
}

TEST_F(SF, TransferExamples) {
    auto r52 = make_refinement(f5, f2);
    F2Cells c(*f2->pi);
    std::vector<HomogPoly> p(3, X1());
    p[c.left] = Z1();
    auto f = make_affine_pp(f2, p, 1);
    auto g = pullback_special(r52, f);
    auto& P5 = *f5->pi;
    EXPECT_TRUE(g.piece(fx::cell(P5, {v({-1, 0}), v({-1, 1})})).is_zero());
    EXPECT_TRUE(g.piece(fx::cell(P5, {v({-1, 1}), v({0, 1})})).is_zero());
    EXPECT_EQ(g.piece(fx::cell(P5, {v({0, 1}), v({1, 1})})), X1());
    EXPECT_TRUE(alpha(r52, vertex_class(f5, 0)).is_zero());
    try {
        make_refinement(f2, f5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, "NotARefinement");
    }
}

TEST_F(SF, BetaAfterPullbackIsIdentity) {
    std::mt19937 rng(8);
    for (auto [fine, coarse] : {std::pair{f5, f2}, std::pair{f2, f1}, std::pair{f5, f1}, std::pair{f3s, f3}}) {
        auto r = make_refinement(fine, coarse);
        for (int k = 0; k <= 2; ++k)
            for (int s = 0; s < 3; ++s) {
                auto f = sample_affine(coarse, k, rng);
                EXPECT_EQ(beta(r, pullback_special(r, f)), f);
            }
    }
}

TEST_F(SF, DroppingNewVerticesIsNotWellDefined) {
    // gamma'(1) on F2 pushed to F1 must vanish modulo Im gamma = 0, but dropping vertex 1 leaves -x
    auto r = make_refinement(f2, f1);
    EdgeTuple e(f2, 0);
    e.e[0][0] = HomogPoly::constant(1, 1);
    auto img = gamma(e);
    EXPECT_FALSE(alpha(r, img, AlphaRule::Drop).is_zero());
    EXPECT_TRUE(alpha(r, img).is_zero());
}

TEST_F(SF, TransferMapsCommuteWithDdc) {
    std::mt19937 rng(9);
    for (auto [fine, coarse] : {std::pair{f5, f2}, std::pair{f2, f1}, std::pair{f3s, f3}}) {
        auto r = make_refinement(fine, coarse);
        for (int k = 0; k <= 2; ++k)
            for (int s = 0; s < 4; ++s) {
                auto t = sample_vertex_tuple(fine, k, rng);
                EXPECT_EQ(ddc_model(alpha(r, t)), alpha(r, ddc_model(t)));
                auto u = sample_vertex_tuple(coarse, k, rng);
                auto lhs = ddc_model(zeta(r, u));
                auto rhs = to_vertex_tuple(pullback_special(r, affine_from_vertex_tuple(ddc_model(u))));
                EXPECT_EQ(lhs, rhs);
            }
    }
}
