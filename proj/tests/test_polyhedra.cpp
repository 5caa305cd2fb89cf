#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace tnarak;
using fx::v;

static std::vector<std::vector<RatVec>> sorted(std::vector<std::vector<RatVec>> g) {
    std::sort(g.begin(), g.end());
    return g;
}

TEST(Complex, F1F2Valid) {
    auto f1 = fx::F1(), f2 = fx::F2();
    EXPECT_TRUE(f1.complete());
    EXPECT_TRUE(f2.complete());
    EXPECT_EQ(f2.num_vertices(), 2u);
    EXPECT_EQ(f2.bounded_edges().size(), 1u);
    EXPECT_EQ(f1.bounded_edges().size(), 0u);
}

TEST(Complex, OverlapIsNotAComplex) {
    try {
        build_complex(1, {v({0}), v({1}), {rat(1, 2)}, v({2})}, {{{0, 1}, {}}, {{2, 3}, {}}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, "NotAComplex");
    }
}

TEST(Complex, UnpointedRejected) {
    try {
        build_complex(1, {v({0})}, {{{0}, {v({1}), v({-1})}}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, "NonSCR");
    }
}

TEST(Complex, IncompleteDetected) {
    auto p = build_complex(1, {v({0}), v({1})}, {{{0, 1}, {}}});
    EXPECT_FALSE(p.complete());
}

TEST(ConeOver, F1AndF2) {
    EXPECT_EQ(fx::F1().max_generators(), sorted({{v({0, 1}), v({1, 0})}, {v({-1, 0}), v({0, 1})}}));
    EXPECT_EQ(fx::F2().max_generators(), sorted({{v({0, 1}), v({1, 1})}, {v({1, 0}), v({1, 1})}, {v({-1, 0}), v({0, 1})}}));
    auto pt = build_complex(1, {v({3})}, {{{0}, {}}});
    EXPECT_EQ(pt.max_generators(), (std::vector<std::vector<RatVec>>{{v({3, 1})}}));
}

TEST(ConeOver, SliceRecoversCells) {
    auto p = fx::F5();
    for (std::size_t i = 0; i < p.num_max_cells(); ++i) {
        auto c = p.max_cell_cone(i);
        EXPECT_TRUE(p.is_cell(c));
        EXPECT_EQ(p.cell_dim(c), 1u);
    }
    EXPECT_EQ(p.vertices(), (std::vector<RatVec>{v({-1}), v({0}), v({1})}));
}

TEST(Recession, Fans) {
    auto f1 = recession_fan(fx::F1());
    EXPECT_TRUE(recession_fan(fx::F2()).same_cones(f1));
    EXPECT_TRUE(recession_fan(fx::F5()).same_cones(f1));
    EXPECT_EQ(f1.maximal().size(), 2u);
    try {
        recession_fan(build_complex(1, {v({0}), v({1})}, {{{0, 1}, {}}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, "IncompleteInput");
    }
}

TEST(Regular, Examples) {
    EXPECT_TRUE(fx::F2().cone().is_regular());
    EXPECT_TRUE(fx::F1().cone().is_regular());
    EXPECT_TRUE(fx::F5().cone().is_regular());
    EXPECT_TRUE(fx::H().cone().is_regular());
    EXPECT_TRUE(fx::F3().cone().is_regular());
    EXPECT_TRUE(fx::F3sub().cone().is_regular());
    EXPECT_FALSE(Fan::from_cones(2, {{v({1, 0}), v({1, 2})}}).is_regular());
}

TEST(Chart, F2) {
    auto p = fx::F2();
    auto c0 = vertex_chart(p, 0);
    EXPECT_EQ(c0.multiplicity, 1);
    EXPECT_TRUE(c0.fan.is_complete());
    EXPECT_EQ(c0.fan.rays(), (std::vector<RatVec>{v({-1}), v({1})}));
    auto c1 = vertex_chart(p, 1);
    EXPECT_TRUE(c1.fan.is_complete());
    // [0,1] is the maximal cell with generators (0,1),(1,1); at v=1 it becomes R<=0
    std::size_t seg = 0;
    for (std::size_t i = 0; i < p.num_max_cells(); ++i)
        if (p.cone().generators(p.max_cell_cone(i)) == std::vector<RatVec>{v({0, 1}), v({1, 1})}) seg = i;
    auto mi = c1.cell_max.at(seg);
    EXPECT_EQ(c1.fan.generators(c1.fan.maximal()[mi]), (std::vector<RatVec>{v({-1})}));
    EXPECT_EQ(fx::H().multiplicity(1), 2);
    try {
        vertex_chart(p, 5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, "NotAVertex");
    }
}

TEST(Chart, CompleteForF3Sub) {
    auto p = fx::F3sub();
    for (std::size_t i = 0; i < p.num_vertices(); ++i) EXPECT_TRUE(vertex_chart(p, i).fan.is_complete());
}

TEST(Edges, Ordering) {
    auto p = fx::F2();
    auto e = edge_data(p, p.bounded_edges()[0]);
    EXPECT_EQ(p.vertex(e.v1), v({1}));
    EXPECT_EQ(p.vertex(e.v2), v({0}));
    EXPECT_EQ(chart_image(p, e.v2, p.cone().rays()[e.ray2]), v({1}));
    EXPECT_EQ(chart_image(p, e.v1, p.cone().rays()[e.ray1]), v({-1}));
    auto q = fx::F5();
    auto e0 = edge_data(q, q.bounded_edges()[0]);
    EXPECT_EQ(q.vertex(e0.v1), v({0}));
    EXPECT_EQ(q.vertex(e0.v2), v({-1}));
    auto f1 = fx::F1();
    try {
        edge_data(f1, f1.max_cell_cone(0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, "UnboundedEdge");
    }
}

TEST(HorizontalStar, Examples) {
    auto f2 = fx::F2();
    EXPECT_TRUE(horizontal_star(f2, {}).same_as(f2));
    auto pt = horizontal_star(f2, {v({1})});
    EXPECT_EQ(pt.rank(), 0u);
    EXPECT_EQ(pt.num_vertices(), 1u);
    EXPECT_TRUE(pt.complete());
    auto s = horizontal_star(fx::F3(), {v({1, 0})});
    EXPECT_EQ(s.rank(), 1u);
    EXPECT_TRUE(s.complete());
    EXPECT_EQ(s.num_max_cells(), 2u);
    try {
        horizontal_star(fx::F3(), {v({1, 1})});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, "NotARecessionCone");
    }
}

TEST(Refines, PartialOrder) {
    auto f1 = fx::F1(), f2 = fx::F2(), f5 = fx::F5();
    EXPECT_TRUE(refines(f5, f2));
    EXPECT_FALSE(refines(f2, f5));
    auto id = refines(f2, f2);
    ASSERT_TRUE(id);
    for (std::size_t c = 0; c < id->mu.size(); ++c) EXPECT_EQ(id->mu[c], c);
    EXPECT_TRUE(refines(f5, f1));
    EXPECT_TRUE(refines(f2, f1));
    EXPECT_FALSE(refines(f1, f2));
}

TEST(StarSubdivision, Examples) {
    EXPECT_TRUE(star_subdivision(fx::F1(), v({1})).same_as(fx::F2()));
    EXPECT_TRUE(star_subdivision(fx::F2(), v({-1})).same_as(fx::F5()));
    EXPECT_TRUE(star_subdivision(fx::F2(), v({0})).same_as(fx::F2()));
    auto s = fx::F3sub();
    EXPECT_EQ(s.num_vertices(), 2u);
    EXPECT_TRUE(s.complete());
    EXPECT_TRUE(refines(s, fx::F3()));
    try {
        star_subdivision(build_complex(1, {v({0}), v({1})}, {{{0, 1}, {}}}), v({3}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, "PointOutsideSupport");
    }
}

TEST(CommonRefinement, Examples) {
    EXPECT_TRUE(common_refinement(fx::F2(), fx::F5()).complex.same_as(fx::F5()));
    EXPECT_TRUE(common_refinement(fx::F2(), fx::F2()).complex.same_as(fx::F2()));
    auto half = rat(1, 2);
    auto shifted = build_complex(1, {{half}, {Rat(3) / 2}}, {{{0, 1}, {}}, {{1}, {v({1})}}, {{0}, {v({-1})}}});
    auto r = common_refinement(fx::F2(), shifted);
    EXPECT_EQ(r.complex.vertices(), (std::vector<RatVec>{v({0}), {half}, v({1}), {Rat(3) / 2}}));
    EXPECT_TRUE(refines(r.complex, fx::F2()));
    EXPECT_TRUE(refines(r.complex, shifted));
    try {
        common_refinement(fx::F2(), build_complex(1, {v({0})}, {{{0}, {v({1})}}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind, "IncompleteInput");
    }
}
