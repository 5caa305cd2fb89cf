#pragma once
// Equivariant Chow groups of the special fiber: affine PP functions, vertex and
// edge tuples, rho, gamma, ddc = -gamma rho, the iota maps, homology
// presentations and the transfer maps between models.

#include "tnarak/ppfan.hpp"

#include <random>

namespace tnarak {

// A regular model: the complex with its vertex charts and bounded edges cached.
struct Model {
    std::shared_ptr<const PolyComplex> pi;
    FanPtr cone;
    std::size_t n = 0;
    std::vector<VertexChart> charts;
    std::vector<FanPtr> chart_fans;
    std::vector<EdgeData> edges;
    std::vector<std::vector<std::size_t>> edge_cells;  // maximal cells containing each edge
    std::vector<GlueConstraint> cell_constraints;      // facet conditions of affine PP functions

    const PolyComplex& complex() const { return *pi; }
    std::size_t num_vertices() const { return pi->num_vertices(); }
    std::size_t num_cells() const { return pi->num_max_cells(); }
    std::size_t num_edges() const { return edges.size(); }
    std::size_t chart_piece(std::size_t v, std::size_t cell) const { return charts.at(v).cell_max.at(cell); }
    bool reduced() const {
        for (std::size_t v = 0; v < num_vertices(); ++v)
            if (pi->multiplicity(v) != 1) return false;
        return true;
    }
    // dual form of the chart-v ray pointing along edge e, on chart cone of cell
    RatVec edge_form(std::size_t e, std::size_t v, std::size_t cell) const {
        auto& ed = edges.at(e);
        std::size_t src = v == ed.v1 ? ed.ray1 : ed.ray2;
        return dual_form(*chart_fans.at(v), chart_piece(v, cell), charts.at(v).src_ray.at(src));
    }
};
using ModelPtr = std::shared_ptr<const Model>;

inline ModelPtr make_model(std::shared_ptr<const PolyComplex> pi) {
    if (!pi->complete()) throw Error("IncompleteInput", "models are complete complexes");
    if (!pi->cone().is_regular()) throw Error("NotRegular", "c(Pi) is not regular");
    auto m = std::make_shared<Model>();
    m->pi = pi;
    m->cone = pi->cone_ptr();
    m->n = pi->rank();
    for (std::size_t v = 0; v < pi->num_vertices(); ++v) {
        m->charts.push_back(vertex_chart(*pi, v));
        m->chart_fans.push_back(std::make_shared<const Fan>(m->charts.back().fan));
    }
    for (auto c : pi->bounded_edges()) {
        m->edges.push_back(edge_data(*pi, c));
        m->edge_cells.push_back(pi->max_cells_containing_cone(c));
    }
    auto& f = pi->cone();
    for (std::size_t i = 0; i < m->num_cells(); ++i)
        for (std::size_t j = i + 1; j < m->num_cells(); ++j) {
            auto& a = f.cone_rays(pi->max_cell_cone(i));
            auto& b = f.cone_rays(pi->max_cell_cone(j));
            std::vector<std::size_t> x;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(x));
            auto c = f.find_cone(x);
            if (c && pi->is_cell(*c)) m->cell_constraints.push_back({i, j, pi->cell_directions(*c)});
        }
    return m;
}
inline ModelPtr make_model(const PolyComplex& pi) { return make_model(std::make_shared<const PolyComplex>(pi)); }

// ---- affine piecewise polynomials ----

class AffinePP {
public:
    AffinePP() = default;
    AffinePP(ModelPtr m, int k) : m_(std::move(m)), k_(k), p_(m_->num_cells(), HomogPoly(m_->n, k)) {}

    const ModelPtr& model() const { return m_; }
    int degree() const { return k_; }
    const HomogPoly& piece(std::size_t c) const { return p_.at(c); }
    const std::vector<HomogPoly>& pieces() const { return p_; }
    void set_piece(std::size_t c, HomogPoly p) {
        if (!p.is_zero() && p.degree() != k_) throw Error("DegreeMismatch", "affine piece degree");
        if (p.is_zero()) p = HomogPoly(m_->n, k_);
        p_.at(c) = std::move(p);
    }
    bool is_zero() const {
        return std::all_of(p_.begin(), p_.end(), [](auto& p) { return p.is_zero(); });
    }
    bool operator==(const AffinePP& o) const { return k_ == o.k_ && p_ == o.p_; }

private:
    ModelPtr m_;
    int k_ = 0;
    std::vector<HomogPoly> p_;
};

inline void validate_affine(const AffinePP& f) {
    auto& m = *f.model();
    for (auto& c : m.cell_constraints)
        if (!equal_on_span(f.piece(c.i), f.piece(c.j), {m.n, c.span}))
            throw Error("FacetMismatch", "cells " + std::to_string(c.i) + " and " + std::to_string(c.j));
}

inline AffinePP make_affine_pp(ModelPtr m, const std::vector<HomogPoly>& pieces, int k) {
    if (pieces.size() != m->num_cells()) throw Error("DimensionMismatch", "one polynomial per maximal cell");
    AffinePP f(m, k);
    for (std::size_t i = 0; i < pieces.size(); ++i) f.set_piece(i, pieces[i]);
    validate_affine(f);
    return f;
}

inline AffinePP affine_add(const AffinePP& a, const AffinePP& b) {
    if (a.degree() != b.degree()) throw Error("DegreeMismatch", "affine_add");
    AffinePP r(a.model(), a.degree());
    for (std::size_t i = 0; i < a.pieces().size(); ++i) r.set_piece(i, a.piece(i) + b.piece(i));
    return r;
}
inline AffinePP affine_scale(const Rat& s, const AffinePP& a) {
    AffinePP r(a.model(), a.degree());
    for (std::size_t i = 0; i < a.pieces().size(); ++i) r.set_piece(i, s * a.piece(i));
    return r;
}
inline AffinePP affine_mul(const AffinePP& a, const AffinePP& b) {
    AffinePP r(a.model(), a.degree() + b.degree());
    for (std::size_t i = 0; i < a.pieces().size(); ++i) r.set_piece(i, a.piece(i) * b.piece(i));
    return r;
}
inline AffinePP affine_global(ModelPtr m, const HomogPoly& p) {
    AffinePP r(m, p.degree());
    for (std::size_t i = 0; i < m->num_cells(); ++i) r.set_piece(i, p);
    return r;
}

inline std::vector<AffinePP> affine_basis(ModelPtr m, int k) {
    std::vector<AffinePP> out;
    for (auto& x : piecewise_kernel(m->n, k, m->num_cells(), m->cell_constraints)) {
        AffinePP f(m, k);
        auto ps = split_pieces(m->n, k, x);
        for (std::size_t i = 0; i < ps.size(); ++i) f.set_piece(i, ps[i]);
        out.push_back(f);
    }
    return out;
}
inline std::size_t dim_affine_pp(ModelPtr m, int k) { return affine_basis(m, k).size(); }

// ---- vertex and edge tuples ----

struct VertexTuple {
    ModelPtr model;
    int degree = 0;
    std::vector<PPFunction> f;  // per vertex, on its chart

    VertexTuple() = default;
    VertexTuple(ModelPtr m, int k) : model(std::move(m)), degree(k) {
        for (auto& cf : model->chart_fans) f.emplace_back(cf, k);
    }
    bool is_zero() const {
        return std::all_of(f.begin(), f.end(), [](auto& x) { return x.is_zero(); });
    }
    bool operator==(const VertexTuple& o) const { return degree == o.degree && f == o.f; }
};

struct EdgeTuple {
    ModelPtr model;
    int degree = 0;
    std::vector<std::vector<HomogPoly>> e;  // per edge, per cell in model->edge_cells

    EdgeTuple() = default;
    EdgeTuple(ModelPtr m, int k) : model(std::move(m)), degree(k) {
        for (auto& cells : model->edge_cells) e.emplace_back(cells.size(), HomogPoly(model->n, k));
    }
    bool is_zero() const {
        for (auto& x : e)
            for (auto& p : x)
                if (!p.is_zero()) return false;
        return true;
    }
};

inline VertexTuple vt_add(const VertexTuple& a, const VertexTuple& b) {
    if (a.degree != b.degree) throw Error("DegreeMismatch", "vertex tuple add");
    VertexTuple r(a.model, a.degree);
    for (std::size_t v = 0; v < a.f.size(); ++v) r.f[v] = pp_add(a.f[v], b.f[v]);
    return r;
}
inline VertexTuple vt_scale(const Rat& s, const VertexTuple& a) {
    VertexTuple r(a.model, a.degree);
    for (std::size_t v = 0; v < a.f.size(); ++v) r.f[v] = pp_scale(s, a.f[v]);
    return r;
}
inline VertexTuple vt_sub(const VertexTuple& a, const VertexTuple& b) { return vt_add(a, vt_scale(-1, b)); }

// [V(v)]-type tuple: constant 1 at vertex v.
inline VertexTuple vertex_class(ModelPtr m, std::size_t v) {
    VertexTuple t(m, 0);
    t.f.at(v) = pp_constant(m->chart_fans[v], 1);
    return t;
}

inline RatVec vt_raw(const VertexTuple& t) {
    RatVec out;
    for (auto& f : t.f) {
        auto c = pp_coeff_vector(f);
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}
inline VertexTuple vt_from_raw(ModelPtr m, int k, const RatVec& x) {
    VertexTuple t(m, k);
    std::size_t M = monomials(m->n, k).size(), off = 0;
    for (std::size_t v = 0; v < t.f.size(); ++v) {
        std::size_t len = M * t.f[v].size();
        auto ps = split_pieces(m->n, k, RatVec(x.begin() + off, x.begin() + off + len));
        for (std::size_t i = 0; i < ps.size(); ++i) t.f[v].set_piece(i, ps[i]);
        off += len;
    }
    return t;
}
inline RatVec et_raw(const EdgeTuple& t) {
    RatVec out;
    for (auto& x : t.e) {
        auto c = stack_pieces(t.model->n, t.degree, x);
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}
inline EdgeTuple et_from_raw(ModelPtr m, int k, const RatVec& x) {
    EdgeTuple t(m, k);
    std::size_t M = monomials(m->n, k).size(), off = 0;
    for (auto& pcs : t.e) {
        std::size_t len = M * pcs.size();
        auto ps = split_pieces(m->n, k, RatVec(x.begin() + off, x.begin() + off + len));
        for (std::size_t i = 0; i < ps.size(); ++i) pcs[i] = ps[i];
        off += len;
    }
    return t;
}

inline std::size_t vt_raw_dim(const Model& m, int k) {
    std::size_t M = monomials(m.n, k).size(), s = 0;
    for (auto& cf : m.chart_fans) s += M * cf->maximal().size();
    return s;
}

// Basis of the vertex layer: sum over vertices of PP^k of the charts.
inline std::vector<RatVec> vertex_layer_basis(ModelPtr m, int k) {
    std::size_t M = monomials(m->n, k).size(), total = vt_raw_dim(*m, k), off = 0;
    std::vector<RatVec> out;
    for (auto& cf : m->chart_fans) {
        for (auto& x : piecewise_kernel(m->n, k, cf->maximal().size(), fan_constraints(*cf))) {
            RatVec y(total);
            std::copy(x.begin(), x.end(), y.begin() + off);
            out.push_back(y);
        }
        off += M * cf->maximal().size();
    }
    return out;
}

// Constraints of PP functions on the star of an edge, in the higher endpoint's chart.
inline std::vector<GlueConstraint> edge_constraints(const Model& m, std::size_t e) {
    auto& cells = m.edge_cells[e];
    auto v = m.edges[e].v1;
    auto& fan = *m.chart_fans[v];
    std::vector<GlueConstraint> cons;
    for (std::size_t a = 0; a < cells.size(); ++a)
        for (std::size_t b = a + 1; b < cells.size(); ++b) {
            auto& ra = fan.cone_rays(fan.maximal()[m.chart_piece(v, cells[a])]);
            auto& rb = fan.cone_rays(fan.maximal()[m.chart_piece(v, cells[b])]);
            std::vector<std::size_t> x;
            std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(x));
            cons.push_back({a, b, fan.generators(*fan.find_cone(x))});
        }
    return cons;
}

inline std::vector<RatVec> edge_layer_basis(ModelPtr m, int k) {
    std::size_t M = monomials(m->n, k).size(), total = 0, off = 0;
    for (auto& c : m->edge_cells) total += M * c.size();
    std::vector<RatVec> out;
    for (std::size_t e = 0; e < m->num_edges(); ++e) {
        for (auto& x : piecewise_kernel(m->n, k, m->edge_cells[e].size(), edge_constraints(*m, e))) {
            RatVec y(total);
            std::copy(x.begin(), x.end(), y.begin() + off);
            out.push_back(y);
        }
        off += M * m->edge_cells[e].size();
    }
    return out;
}

inline VertexTuple to_vertex_tuple(const AffinePP& f) {
    auto& m = *f.model();
    VertexTuple t(f.model(), f.degree());
    for (std::size_t v = 0; v < m.num_vertices(); ++v)
        for (auto [cell, mi] : m.charts[v].cell_max) t.f[v].set_piece(mi, f.piece(cell));
    return t;
}

inline EdgeTuple rho(const VertexTuple& t) {
    auto& m = *t.model;
    EdgeTuple r(t.model, t.degree);
    for (std::size_t e = 0; e < m.num_edges(); ++e) {
        auto& ed = m.edges[e];
        for (std::size_t i = 0; i < m.edge_cells[e].size(); ++i) {
            auto c = m.edge_cells[e][i];
            r.e[e][i] = t.f[ed.v1].piece(m.chart_piece(ed.v1, c)) - t.f[ed.v2].piece(m.chart_piece(ed.v2, c));
        }
    }
    return r;
}

inline std::optional<AffinePP> from_vertex_tuple(const VertexTuple& t) {
    if (!rho(t).is_zero()) return std::nullopt;
    auto& m = *t.model;
    AffinePP f(t.model, t.degree);
    std::vector<bool> seen(m.num_cells(), false);
    for (std::size_t v = 0; v < m.num_vertices(); ++v)
        for (auto [cell, mi] : m.charts[v].cell_max) {
            auto& p = t.f[v].piece(mi);
            if (seen[cell] && !(f.piece(cell) == p)) return std::nullopt;
            f.set_piece(cell, p);
            seen[cell] = true;
        }
    validate_affine(f);
    return f;
}

inline AffinePP affine_from_vertex_tuple(const VertexTuple& t) {
    auto f = from_vertex_tuple(t);
    if (!f) throw Error("NotInKernel", "vertex tuple is not in ker rho");
    return *f;
}

inline VertexTuple gamma(const EdgeTuple& e) {
    auto& m = *e.model;
    VertexTuple r(e.model, e.degree + 1);
    for (std::size_t g = 0; g < m.num_edges(); ++g) {
        auto& ed = m.edges[g];
        for (std::size_t i = 0; i < m.edge_cells[g].size(); ++i) {
            auto c = m.edge_cells[g][i];
            if (e.e[g][i].is_zero()) continue;
            for (auto [v, sign] : {std::pair{ed.v1, 1}, std::pair{ed.v2, -1}}) {
                auto mi = m.chart_piece(v, c);
                auto add = Rat(sign) * (HomogPoly::linear(m.edge_form(g, v, c)) * e.e[g][i]);
                r.f[v].set_piece(mi, r.f[v].piece(mi) + add);
            }
        }
    }
    return r;
}

inline VertexTuple ddc_model(const VertexTuple& t) { return vt_scale(-1, gamma(rho(t))); }

// Closed form: at v, sum over edges at v of phi_{v,gamma} (f_{other} - f_v) on cells containing gamma.
inline VertexTuple ddc_closed_form(const VertexTuple& t) {
    auto& m = *t.model;
    VertexTuple r(t.model, t.degree + 1);
    for (std::size_t g = 0; g < m.num_edges(); ++g) {
        auto& ed = m.edges[g];
        for (auto [v, w] : {std::pair{ed.v1, ed.v2}, std::pair{ed.v2, ed.v1}})
            for (auto c : m.edge_cells[g]) {
                auto mi = m.chart_piece(v, c);
                auto diff = t.f[w].piece(m.chart_piece(w, c)) - t.f[v].piece(mi);
                r.f[v].set_piece(mi, r.f[v].piece(mi) + HomogPoly::linear(m.edge_form(g, v, c)) * diff);
            }
    }
    return r;
}

// Substitute the height coordinate 0 cell-wise.
inline AffinePP iota_upper(ModelPtr m, const PPFunction& F) {
    if (!F.same_fan(PPFunction(m->cone, 0))) throw Error("FanMismatch", "iota_upper");
    RatMat S(m->n + 1, m->n);
    for (std::size_t j = 0; j < m->n; ++j) S(j, j) = 1;
    AffinePP f(m, F.degree());
    for (std::size_t i = 0; i < m->num_cells(); ++i) f.set_piece(i, F.piece(i).substitute(S));
    validate_affine(f);
    return f;
}

// Polynomial in a in N pulled back along (x,t) -> x - t v.
inline HomogPoly lift_at(const Model& m, std::size_t v, const HomogPoly& p) {
    RatMat S(m.n, m.n + 1);
    auto& pt = m.pi->vertex(v);
    for (std::size_t j = 0; j < m.n; ++j) {
        S(j, j) = 1;
        S(j, m.n) = -pt[j];
    }
    return p.substitute(S);
}

inline PPFunction iota_lower(const VertexTuple& t) {
    auto& m = *t.model;
    PPFunction F(m.cone, t.degree + 1);
    for (std::size_t v = 0; v < m.num_vertices(); ++v) {
        auto phi = phi_ray(m.cone, m.pi->vertex_ray(v));
        for (auto [cell, mi] : m.charts[v].cell_max) {
            auto add = lift_at(m, v, t.f[v].piece(mi)) * phi.piece(cell);
            F.set_piece(cell, F.piece(cell) + add);
        }
    }
    validate_pp(F);
    return F;
}

inline VertexTuple cap_fundamental(const AffinePP& f) {
    auto t = to_vertex_tuple(f);
    for (std::size_t v = 0; v < t.f.size(); ++v) t.f[v] = pp_scale(Rat(f.model()->pi->multiplicity(v)), t.f[v]);
    return t;
}

// ---- linear algebra on the layers ----

inline std::vector<RatVec> apply_all(const std::vector<RatVec>& basis, const std::function<RatVec(const RatVec&)>& map) {
    std::vector<RatVec> out;
    for (auto& b : basis) out.push_back(map(b));
    return out;
}
inline std::size_t rank_of(const std::vector<RatVec>& vs) { return vs.empty() ? 0 : rank(vs, vs[0].size()); }

// Coefficients c with sum c_i vs_i = 0, as combinations.
inline std::vector<RatVec> relations(const std::vector<RatVec>& vs) {
    if (vs.empty()) return {};
    if (vs[0].empty()) {
        std::vector<RatVec> all;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            RatVec e(vs.size());
            e[i] = 1;
            all.push_back(e);
        }
        return all;
    }
    return kernel_basis(RatMat::from_cols(vs, vs[0].size()));
}

inline RatVec combine(const std::vector<RatVec>& vs, const RatVec& c, std::size_t dim) {
    RatVec out(dim);
    for (std::size_t i = 0; i < vs.size(); ++i)
        if (c[i] != 0) out = out + c[i] * vs[i];
    return out;
}

// ker rho in degree k, as raw vertex-tuple vectors.
inline std::vector<RatVec> ker_rho_basis(ModelPtr m, int k) {
    auto B = vertex_layer_basis(m, k);
    auto img = apply_all(B, [&](const RatVec& x) { return et_raw(rho(vt_from_raw(m, k, x))); });
    std::vector<RatVec> out;
    for (auto& c : relations(img)) out.push_back(combine(B, c, vt_raw_dim(*m, k)));
    return out;
}

// Image of gamma from degree k-1 edge classes into the degree-k vertex layer.
inline std::vector<RatVec> gamma_image(ModelPtr m, int k) {
    if (k < 1) return {};
    auto E = edge_layer_basis(m, k - 1);
    return apply_all(E, [&](const RatVec& x) { return vt_raw(gamma(et_from_raw(m, k - 1, x))); });
}

struct ExactnessReport {
    int degree = 0;
    std::size_t vertex_layer = 0, edge_layer = 0;
    std::size_t rank_rho = 0, dim_ker_rho = 0, dim_affine = 0;
    std::size_t rank_gamma = 0, dim_coker_gamma = 0;
    bool rho_lands_in_edges = true, gamma_lands_in_vertices = true, bases_correspond = true;
    bool ok() const {
        return rank_rho + dim_ker_rho == vertex_layer && dim_ker_rho == dim_affine && rank_gamma + dim_coker_gamma == vertex_layer &&
               rho_lands_in_edges && gamma_lands_in_vertices && bases_correspond;
    }
};

inline bool in_span(const std::vector<RatVec>& span, const RatVec& x) {
    if (is_zero(x)) return true;
    if (span.empty()) return false;
    auto all = span;
    all.push_back(x);
    return rank_of(all) == rank_of(span);
}

inline ExactnessReport exactness_report(ModelPtr m, int k) {
    ExactnessReport r;
    r.degree = k;
    auto V = vertex_layer_basis(m, k);
    auto E = edge_layer_basis(m, k);
    r.vertex_layer = V.size();
    r.edge_layer = E.size();
    auto img = apply_all(V, [&](const RatVec& x) { return et_raw(rho(vt_from_raw(m, k, x))); });
    r.rank_rho = rank_of(img);
    for (auto& y : img)
        if (!in_span(E, y)) r.rho_lands_in_edges = false;
    auto K = ker_rho_basis(m, k);
    r.dim_ker_rho = K.size();
    auto A = affine_basis(m, k);
    r.dim_affine = A.size();
    std::vector<RatVec> av;
    for (auto& a : A) av.push_back(vt_raw(to_vertex_tuple(a)));
    for (auto& a : av)
        if (!in_span(K, a)) r.bases_correspond = false;
    if (rank_of(av) != K.size()) r.bases_correspond = false;
    auto G = gamma_image(m, k);
    r.rank_gamma = rank_of(G);
    for (auto& g : G)
        if (!in_span(V, g)) r.gamma_lands_in_vertices = false;
    r.dim_coker_gamma = V.size() - r.rank_gamma;
    return r;
}

struct HomologyClass {
    ModelPtr model;
    int degree = 0;
    VertexTuple rep;
};

struct HomologyPresentation {
    int degree = 0;
    std::size_t dim = 0;
    std::vector<VertexTuple> basis;  // representatives of a complement of Im gamma
};

inline HomologyPresentation homology_presentation(ModelPtr m, int k) {
    auto V = vertex_layer_basis(m, k);
    auto G = gamma_image(m, k);
    HomologyPresentation h{k, 0, {}};
    std::vector<RatVec> cur = G;
    for (auto& b : V) {
        if (in_span(cur, b)) continue;
        cur.push_back(b);
        h.basis.push_back(vt_from_raw(m, k, b));
    }
    h.dim = h.basis.size();
    return h;
}

inline bool class_equal(const VertexTuple& a, const VertexTuple& b) {
    if (a.degree != b.degree) return a.is_zero() && b.is_zero();
    return in_span(gamma_image(a.model, a.degree), vt_raw(vt_sub(a, b)));
}

struct KerCokerReport {
    int degree = 0;
    std::size_t dim_ker = 0, dim_coker = 0, dim_pp = 0;
    bool gamma_killed = true;
    bool equal() const { return gamma_killed && dim_ker == dim_coker && dim_coker == dim_pp; }
};

// ddc_k : V_k -> V_{k+1}; kernel on V_k / Im gamma, cokernel inside ker rho_k.
inline KerCokerReport ker_coker_report(ModelPtr m, int k) {
    KerCokerReport r;
    r.degree = k;
    auto ddc_raw = [&](int deg) {
        return [m, deg](const RatVec& x) { return vt_raw(ddc_model(vt_from_raw(m, deg, x))); };
    };
    auto V = vertex_layer_basis(m, k);
    auto img = apply_all(V, ddc_raw(k));
    std::size_t ker_all = relations(img).size();
    auto G = gamma_image(m, k);
    for (auto& g : G)
        if (!is_zero(ddc_raw(k)(g))) r.gamma_killed = false;
    r.dim_ker = ker_all - rank_of(G);
    std::size_t rank_prev = 0;
    if (k >= 1) rank_prev = rank_of(apply_all(vertex_layer_basis(m, k - 1), ddc_raw(k - 1)));
    r.dim_coker = ker_rho_basis(m, k).size() - rank_prev;
    auto sigma = std::make_shared<const Fan>(recession_fan(*m->pi));
    r.dim_pp = graded_basis(sigma, k).dim();
    return r;
}

// ---- sampling ----

inline VertexTuple sample_vertex_tuple(ModelPtr m, int k, std::mt19937& rng, int range = 5) {
    std::uniform_int_distribution<int> d(-range, range);
    RatVec x(vt_raw_dim(*m, k));
    for (auto& b : vertex_layer_basis(m, k)) x = x + Rat(d(rng)) * b;
    return vt_from_raw(m, k, x);
}
inline EdgeTuple sample_edge_tuple(ModelPtr m, int k, std::mt19937& rng, int range = 5) {
    std::uniform_int_distribution<int> d(-range, range);
    std::size_t M = monomials(m->n, k).size(), total = 0;
    for (auto& c : m->edge_cells) total += M * c.size();
    RatVec x(total);
    for (auto& b : edge_layer_basis(m, k)) x = x + Rat(d(rng)) * b;
    return et_from_raw(m, k, x);
}
inline AffinePP sample_affine(ModelPtr m, int k, std::mt19937& rng, int range = 5) {
    std::uniform_int_distribution<int> d(-range, range);
    AffinePP f(m, k);
    for (auto& b : affine_basis(m, k)) f = affine_add(f, affine_scale(d(rng), b));
    return f;
}

// ---- transfer maps along a refinement Pi' >= Pi ----

struct Refinement {
    ModelPtr fine, coarse;
    ModelMap map;
    std::vector<std::size_t> cell_image;    // fine maximal cell -> coarse maximal cell
    std::vector<std::size_t> vertex_home;   // fine vertex -> coarse vertex it is assigned to
    std::vector<std::size_t> vertex_cell;   // fine vertex -> smallest coarse cone containing it
    std::vector<std::optional<std::size_t>> old_vertex;  // fine vertex -> same coarse vertex
};

inline Refinement make_refinement(ModelPtr fine, ModelPtr coarse) {
    auto mm = refines(fine->pi, coarse->pi);
    if (!mm) throw Error("NotARefinement", "source does not refine target");
    Refinement r{fine, coarse, *mm, {}, {}, {}, {}};
    for (std::size_t i = 0; i < fine->num_cells(); ++i) r.cell_image.push_back(mm->max_cell_image(i));
    auto& C = *coarse->pi;
    for (std::size_t v = 0; v < fine->num_vertices(); ++v) {
        auto sigma = mm->mu.at(*fine->pi->cone().find_cone({fine->pi->vertex_ray(v)}));
        r.vertex_cell.push_back(sigma);
        auto vs = C.cell_vertices(sigma);
        // lexicographically largest vertex of the carrier cell
        std::size_t best = vs.at(0);
        for (auto w : vs)
            if (C.vertex(w) > C.vertex(best)) best = w;
        r.vertex_home.push_back(best);
        auto same = C.find_vertex(fine->pi->vertex(v));
        r.old_vertex.push_back(same);
    }
    return r;
}

inline AffinePP pullback_special(const Refinement& r, const AffinePP& f) {
    AffinePP g(r.fine, f.degree());
    for (std::size_t i = 0; i < r.fine->num_cells(); ++i) g.set_piece(i, f.piece(r.cell_image[i]));
    return g;
}

inline VertexTuple zeta(const Refinement& r, const VertexTuple& t) {
    auto& F = *r.fine;
    auto& C = *r.coarse;
    VertexTuple h(r.fine, t.degree);
    for (std::size_t v = 0; v < F.num_vertices(); ++v) {
        auto vs = C.pi->cell_vertices(r.vertex_cell[v]);
        for (auto [cell, mi] : F.charts[v].cell_max) {
            auto big = r.cell_image[cell];
            HomogPoly p(F.n, t.degree);
            for (auto w : vs) p += t.f[w].piece(C.chart_piece(w, big));
            h.f[v].set_piece(mi, p);
        }
    }
    for (auto& f : h.f) validate_pp(f);
    return h;
}

enum class AlphaRule { Assign, Drop };

inline HomogPoly chart_phi(const Model& m, std::size_t v, std::size_t cell) {
    return product_of_forms(m.n, dual_forms(*m.chart_fans[v], m.chart_piece(v, cell)));
}

// Pushforward of vertex tuples. Assign: each new vertex contributes to the
// lexicographically largest vertex of its carrier cell. Drop: new vertices are ignored.
inline VertexTuple alpha(const Refinement& r, const VertexTuple& t, AlphaRule rule = AlphaRule::Assign) {
    auto& F = *r.fine;
    auto& C = *r.coarse;
    VertexTuple out(r.coarse, t.degree);
    for (std::size_t v = 0; v < C.num_vertices(); ++v) {
        for (auto [cell, mi] : C.charts[v].cell_max) {
            auto phi = chart_phi(C, v, cell);
            std::vector<RatFun> terms;
            for (std::size_t w = 0; w < F.num_vertices(); ++w) {
                if (r.vertex_home[w] != v) continue;
                if (rule == AlphaRule::Drop && !r.old_vertex[w]) continue;
                for (auto [fc, fmi] : F.charts[w].cell_max) {
                    if (r.cell_image[fc] != cell) continue;
                    auto& p = t.f[w].piece(fmi);
                    if (p.is_zero()) continue;
                    terms.push_back({p * phi, dual_forms(*F.chart_fans[w], fmi)});
                }
            }
            auto q = ratfun_sum_to_poly(terms, C.n);
            out.f[v].set_piece(mi, q);
        }
    }
    for (auto& f : out.f) validate_pp(f);
    return out;
}

inline AffinePP beta(const Refinement& r, const AffinePP& f, AlphaRule rule = AlphaRule::Assign) {
    auto t = alpha(r, to_vertex_tuple(f), rule);
    auto g = from_vertex_tuple(t);
    if (!g) throw Error("FacetMismatch", "beta output is not an affine PP function");
    return *g;
}

}  // namespace tnarak
