#pragma once
#include "tnarak/specialfiber.hpp"

#include <array>
#include <map>
#include <mutex>

namespace tnarak {

// ---- refinement chains ----

struct Chain {
    std::vector<ModelPtr> models;  // models[i+1] refines models[i]

    std::size_t size() const { return models.size(); }
    const ModelPtr& operator[](std::size_t i) const { return models.at(i); }
    // refinement from models[j] down to models[i], i <= j
    Refinement between(std::size_t j, std::size_t i) const { return make_refinement(models.at(j), models.at(i)); }
};

inline Chain make_chain(std::vector<ModelPtr> ms) {
    if (ms.empty()) throw Error("EmptyChain", "a chain needs at least one model");
    for (std::size_t i = 0; i + 1 < ms.size(); ++i)
        if (!refines(ms[i + 1]->pi, ms[i]->pi))
            throw Error("NotARefinement", "model " + std::to_string(i + 1) + " does not refine model " + std::to_string(i));
    return Chain{std::move(ms)};
}

// Star subdivision at the sum of the generators of one maximal cone. Keeps regularity.
// Height-1 sums come first (they keep the fiber reduced), then smallest norm of the
// new vertex, ties to the lexicographically largest.
inline PolyComplex refine_once(const PolyComplex& p) {
    auto& f = p.cone();
    std::optional<RatVec> best;
    Rat best_norm;
    for (auto m : f.maximal()) {
        RatVec s(f.dim());
        for (auto& g : f.generators(m)) s = s + g;
        RatVec pt(s.begin(), s.end() - 1);
        for (auto& x : pt) x /= s.back();
        Rat nrm = dot(pt, pt);
        bool better = !best || (s.back() == 1 && best->back() != 1);
        if (best && (s.back() == 1) == (best->back() == 1)) better = nrm < best_norm || (nrm == best_norm && s > *best);
        if (better) {
            best = s;
            best_norm = nrm;
        }
    }
    return star_subdivision_ray(p, *best);
}

inline Chain default_chain(ModelPtr base, std::size_t depth) {
    if (depth == 0) throw Error("EmptyChain", "depth must be positive");
    std::vector<ModelPtr> ms{base};
    while (ms.size() < depth) ms.push_back(make_model(refine_once(*ms.back()->pi)));
    return Chain{ms};
}

inline ModelPtr common_model(const ModelPtr& a, const ModelPtr& b) {
    if (a == b) return a;
    if (refines(a->pi, b->pi)) return a;
    if (refines(b->pi, a->pi)) return b;
    auto cr = common_refinement(*a->pi, *b->pi);
    if (!cr.regular) throw Error("NotRegular", "common refinement is not regular");
    return make_model(cr.complex);
}

// ---- closed forms and forms modulo Im(d d-bar) ----

struct ClosedForm {
    AffinePP f;
    const ModelPtr& model() const { return f.model(); }
    int degree() const { return f.degree(); }
};

struct FormModDdbar {
    VertexTuple t;
    const ModelPtr& model() const { return t.model; }
    int degree() const { return t.degree; }
};

inline AffinePP pull_affine(const AffinePP& f, const ModelPtr& target) {
    if (f.model() == target) return f;
    return pullback_special(make_refinement(target, f.model()), f);
}
inline VertexTuple pull_tuple(const VertexTuple& t, const ModelPtr& target) {
    if (t.model == target) return t;
    return zeta(make_refinement(target, t.model), t);
}

struct FormComparison {
    bool equal = true;
    ModelPtr model;                     // where the comparison happened
    std::optional<std::size_t> witness;  // first differing maximal cell there
};

inline FormComparison form_compare(const ClosedForm& a, const ClosedForm& b) {
    auto m = common_model(a.model(), b.model());
    FormComparison r{true, m, std::nullopt};
    auto x = pull_affine(a.f, m), y = pull_affine(b.f, m);
    if (x.degree() != y.degree() && !(x.is_zero() && y.is_zero())) {
        r.equal = false;
        return r;
    }
    for (std::size_t i = 0; i < m->num_cells(); ++i)
        if (!(x.piece(i) == y.piece(i)) && !(x.piece(i).is_zero() && y.piece(i).is_zero())) {
            r.equal = false;
            r.witness = i;
            break;
        }
    return r;
}
inline bool form_equal(const ClosedForm& a, const ClosedForm& b) { return form_compare(a, b).equal; }

inline ClosedForm form_add(const ClosedForm& a, const ClosedForm& b) {
    auto m = common_model(a.model(), b.model());
    return {affine_add(pull_affine(a.f, m), pull_affine(b.f, m))};
}
inline ClosedForm form_scale(const Rat& s, const ClosedForm& a) { return {affine_scale(s, a.f)}; }
inline ClosedForm form_mul(const ClosedForm& a, const ClosedForm& b) {
    auto m = common_model(a.model(), b.model());
    return {affine_mul(pull_affine(a.f, m), pull_affine(b.f, m))};
}

inline bool ddbar_equal(const FormModDdbar& a, const FormModDdbar& b) {
    auto m = common_model(a.model(), b.model());
    return class_equal(pull_tuple(a.t, m), pull_tuple(b.t, m));
}

// Chart-wise product of an affine PP function with a vertex tuple on the same model.
inline VertexTuple affine_times_tuple(const AffinePP& c, const VertexTuple& t) {
    if (c.model() != t.model) throw Error("ModelMismatch", "affine_times_tuple");
    auto cv = to_vertex_tuple(c);
    VertexTuple r(t.model, c.degree() + t.degree);
    for (std::size_t v = 0; v < t.f.size(); ++v) r.f[v] = pp_product(cv.f[v], t.f[v]);
    return r;
}

inline ClosedForm ddc_form(const FormModDdbar& c) { return {affine_from_vertex_tuple(ddc_model(c.t))}; }

// c . dd^c d
inline FormModDdbar ddbar_product(const FormModDdbar& c, const FormModDdbar& d) {
    auto m = common_model(c.model(), d.model());
    auto w = ddc_form({pull_tuple(d.t, m)});
    return {affine_times_tuple(w.f, pull_tuple(c.t, m))};
}

inline FormModDdbar act(const ClosedForm& c, const FormModDdbar& d) {
    auto m = common_model(c.model(), d.model());
    return {affine_times_tuple(pull_affine(c.f, m), pull_tuple(d.t, m))};
}

// cap with the fundamental class of the special fiber
inline FormModDdbar cap_form(const ClosedForm& c) { return {cap_fundamental(c.f)}; }

// ---- towers over models ----

// Either a finite family on explicit models or a rule evaluated on demand with a memo.
template <class V>
class Tower {
public:
    using Rule = std::function<V(const ModelPtr&)>;

    Tower() : s_(std::make_shared<State>()) {}
    static Tower rule(Rule r) {
        Tower t;
        t.s_->rule = std::move(r);
        return t;
    }
    static Tower family(std::vector<std::pair<ModelPtr, V>> vals) {
        Tower t;
        t.s_->family = std::move(vals);
        return t;
    }

    bool is_rule() const { return static_cast<bool>(s_->rule); }
    const std::vector<std::pair<ModelPtr, V>>& values() const { return s_->family; }

    V at(const ModelPtr& m) const {
        if (!is_rule()) {
            for (auto& [mm, v] : s_->family)
                if (mm == m) return v;
            for (auto& [mm, v] : s_->family)
                if (mm->pi->same_as(*m->pi)) return v;
            throw Error("NotInTower", "model is not part of this finite tower");
        }
        {
            std::lock_guard<std::mutex> lk(s_->mu);
            auto it = s_->memo.find(m.get());
            if (it != s_->memo.end()) return it->second.second;
        }
        V v = s_->rule(m);
        std::lock_guard<std::mutex> lk(s_->mu);
        s_->memo.emplace(m.get(), std::make_pair(m, v));
        return v;
    }
    std::vector<V> on(const Chain& c) const {
        std::vector<V> out;
        for (auto& m : c.models) out.push_back(at(m));
        return out;
    }

private:
    struct State {
        Rule rule;
        std::vector<std::pair<ModelPtr, V>> family;
        std::mutex mu;
        std::map<const Model*, std::pair<ModelPtr, V>> memo;
    };
    std::shared_ptr<State> s_;
};

using ClosedTower = Tower<AffinePP>;
using DdbarTower = Tower<VertexTuple>;

inline std::string witness_pair(std::size_t i) { return "models " + std::to_string(i) + " and " + std::to_string(i + 1); }

// closed flavor: compatible under the pushforward of affine PP functions
inline void verify_closed(const ClosedTower& t, const Chain& c) {
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        if (!(beta(c.between(i + 1, i), t.at(c[i + 1])) == t.at(c[i]))) throw Error("CompatibilityViolation", witness_pair(i));
}
// mod-ddbar flavor: compatible under alpha, modulo Im gamma
inline void verify_ddbar(const DdbarTower& t, const Chain& c) {
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        if (!class_equal(alpha(c.between(i + 1, i), t.at(c[i + 1])), t.at(c[i]))) throw Error("CompatibilityViolation", witness_pair(i));
}

inline ClosedTower closed_family_from_top(const AffinePP& top, const Chain& c) {
    std::vector<std::pair<ModelPtr, AffinePP>> vals(c.size());
    vals.back() = {c.models.back(), top};
    for (std::size_t i = c.size() - 1; i-- > 0;) vals[i] = {c[i], beta(c.between(i + 1, i), vals[i + 1].second)};
    return ClosedTower::family(vals);
}
inline DdbarTower ddbar_family_from_top(const VertexTuple& top, const Chain& c) {
    std::vector<std::pair<ModelPtr, VertexTuple>> vals(c.size());
    vals.back() = {c.models.back(), top};
    for (std::size_t i = c.size() - 1; i-- > 0;) vals[i] = {c[i], alpha(c.between(i + 1, i), vals[i + 1].second)};
    return DdbarTower::family(vals);
}

inline ClosedTower ddc_current(const DdbarTower& t) {
    return ClosedTower::rule([t](const ModelPtr& m) { return affine_from_vertex_tuple(ddc_model(t.at(m))); });
}
inline ClosedTower ddc_current(const DdbarTower& t, const Chain& c) {
    auto out = ddc_current(t);
    verify_closed(out, c);
    return out;
}

inline DdbarTower cap_tower(const ClosedTower& t) {
    return DdbarTower::rule([t](const ModelPtr& m) { return cap_fundamental(t.at(m)); });
}
inline ClosedTower act(const ClosedForm& c, const ClosedTower& t) {
    return ClosedTower::rule([c, t](const ModelPtr& m) { return affine_mul(pull_affine(c.f, m), t.at(m)); });
}
inline DdbarTower act(const ClosedForm& c, const DdbarTower& t) {
    return DdbarTower::rule([c, t](const ModelPtr& m) { return affine_times_tuple(pull_affine(c.f, m), t.at(m)); });
}

// ---- invariant cycles ----

struct CycleTerm {
    std::vector<RatVec> cone;  // generators
    Rat coeff;
};

// Cones in N (horizontal, dim = n) or in N x R (model level, dim = n + 1).
struct InvariantCycle {
    std::size_t dim = 0;
    int codim = 0;
    std::vector<CycleTerm> terms;

    bool horizontal(std::size_t n) const { return dim == n; }
    bool is_zero() const {
        return std::all_of(terms.begin(), terms.end(), [](auto& t) { return t.coeff == 0; });
    }
};

inline InvariantCycle cycle_add(const InvariantCycle& a, const InvariantCycle& b) {
    if (a.dim != b.dim || a.codim != b.codim) throw Error("DegreeMismatch", "cycle_add");
    auto r = a;
    r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
    return r;
}
inline InvariantCycle cycle_scale(const Rat& s, InvariantCycle a) {
    for (auto& t : a.terms) t.coeff *= s;
    return a;
}

inline std::size_t cone_index(const Fan& f, const std::vector<RatVec>& gens) {
    std::vector<std::size_t> rs;
    for (auto& g : gens) {
        auto r = f.find_ray(f.lattice() ? primitive(g) : g);
        if (!r) throw Error("NotACone", "generator is not a ray of the fan");
        rs.push_back(*r);
    }
    std::sort(rs.begin(), rs.end());
    auto c = f.find_cone(rs);
    if (!c) throw Error("NotACone", "generators do not span a cone of the fan");
    return *c;
}

// Sum of a_sigma phi_sigma on c(Pi); horizontal cones are placed at height 0.
inline PPFunction cycle_class(const Model& m, const InvariantCycle& z) {
    PPFunction F(m.cone, z.codim);
    for (auto& t : z.terms) {
        if (t.coeff == 0) continue;
        std::vector<RatVec> gens = t.cone;
        if (z.dim == m.n)
            for (auto& g : gens) g.push_back(0);
        else if (z.dim != m.n + 1)
            throw Error("DimensionMismatch", "cycle ambient dimension");
        if (static_cast<int>(gens.size()) != z.codim) throw Error("DegreeMismatch", "cycle term of wrong codimension");
        F = pp_add(F, pp_scale(t.coeff, phi_cone(m.cone, cone_index(*m.cone, gens))));
    }
    return F;
}

// Horizontal cycle of a model-level one: terms whose cone lies at height 0.
inline InvariantCycle horizontal_part(const InvariantCycle& z) {
    InvariantCycle h{z.dim - 1, z.codim, {}};
    for (auto& t : z.terms)
        if (std::all_of(t.cone.begin(), t.cone.end(), [](auto& g) { return g.back() == 0; })) {
            CycleTerm c{{}, t.coeff};
            for (auto g : t.cone) {
                g.pop_back();
                c.cone.push_back(g);
            }
            h.terms.push_back(c);
        }
    return h;
}

// ---- delta currents, Green currents ----

inline ClosedTower delta_current(const InvariantCycle& eta) {
    return ClosedTower::rule([eta](const ModelPtr& m) { return iota_upper(m, cycle_class(*m, eta)); });
}

// Write D (vanishing at height 0) as iota_lower of a vertex tuple. When that is
// impossible, D is written as iota_lower(g) + t*H instead (t*H restricts to zero),
// with g first restricted to the vertices in `prefer` when given.
inline VertexTuple vertical_decomposition(const ModelPtr& m, const PPFunction& D, const std::vector<std::size_t>& prefer = {}) {
    int k = D.degree() - 1;
    if (k < 0) {
        // degree -1: the zero tuple
        if (D.is_zero()) return VertexTuple(m, k);
        throw Error("DecompositionFailed", "degree 0 class is not vertical");
    }
    if (D.is_zero()) return VertexTuple(m, k);
    auto B = vertex_layer_basis(m, k);
    auto rhs = pp_coeff_vector(D);
    auto img = [&](const RatVec& x) { return pp_coeff_vector(iota_lower(vt_from_raw(m, k, x))); };
    auto imgs = apply_all(B, img);
    if (!B.empty())
        if (auto c = solve(RatMat::from_cols(imgs, rhs.size()), rhs)) return vt_from_raw(m, k, combine(B, *c, vt_raw_dim(*m, k)));
    auto t = pp_global(m->cone, HomogPoly::variable(m->n + 1, m->n));
    std::vector<RatVec> tH;
    for (auto& h : graded_basis(m->cone, k).basis) tH.push_back(pp_coeff_vector(pp_product(t, h)));
    auto attempt = [&](const std::vector<RatVec>& basis) -> std::optional<VertexTuple> {
        auto cols = apply_all(basis, img);
        cols.insert(cols.end(), tH.begin(), tH.end());
        if (cols.empty()) return std::nullopt;
        auto c = solve(RatMat::from_cols(cols, rhs.size()), rhs);
        if (!c) return std::nullopt;
        c->resize(basis.size());
        return vt_from_raw(m, k, combine(basis, *c, vt_raw_dim(*m, k)));
    };
    if (!prefer.empty()) {
        std::vector<RatVec> sub;
        for (auto& b : B) {
            auto x = vt_from_raw(m, k, b);
            bool inside = true;
            for (std::size_t w = 0; w < x.f.size() && inside; ++w)
                if (!x.f[w].is_zero() && std::find(prefer.begin(), prefer.end(), w) == prefer.end()) inside = false;
            if (inside) sub.push_back(b);
        }
        if (auto r = attempt(sub)) return *r;
    }
    if (auto r = attempt(B)) return *r;
    throw Error("DecompositionFailed", "class is not vertical modulo t");
}

inline PPFunction pull_pp(const PPFunction& F, const ModelPtr& from, const ModelPtr& to) {
    if (from == to) return F;
    auto mm = refines(to->pi, from->pi);
    if (!mm) throw Error("NotARefinement", "pull_pp");
    return pullback(fan_map(*mm), F);
}

// F restricted to the height-0 cones must be the class of eta.
inline void check_lifting(const ModelPtr& m, const PPFunction& F, const InvariantCycle& eta) {
    auto C = cycle_class(*m, eta);
    if (F.degree() != C.degree()) throw Error("NotALifting", "degree differs from the codimension of the cycle");
    auto& f = *m->cone;
    for (std::size_t c = 0; c < f.num_cones(); ++c) {
        auto& rs = f.cone_rays(c);
        if (!std::all_of(rs.begin(), rs.end(), [&](auto r) { return f.rays()[r][m->n] == 0; })) continue;
        auto mx = f.maximal_containing(rs);
        if (!equal_on_span(F.piece(mx.at(0)), C.piece(mx.at(0)), cone_span(f, c)))
            throw Error("NotALifting", "lifting differs from the cycle class on a horizontal cone");
    }
}

inline DdbarTower green_from_lifting(const ModelPtr& base, const PPFunction& F, const InvariantCycle& eta) {
    check_lifting(base, F, eta);
    return DdbarTower::rule([base, F, eta](const ModelPtr& m) {
        auto D = pp_sub(pull_pp(F, base, m), cycle_class(*m, eta));
        std::vector<std::size_t> fresh;
        for (std::size_t v = 0; v < m->num_vertices(); ++v)
            if (!base->pi->find_vertex(m->pi->vertex(v))) fresh.push_back(v);
        return vertical_decomposition(m, D, fresh);
    });
}
inline DdbarTower green_default(const ModelPtr& base, const InvariantCycle& eta) { return green_from_lifting(base, cycle_class(*base, eta), eta); }

// dd^c g + delta_eta on one model; absent when it is not an affine PP function
inline std::optional<AffinePP> green_form_at(const DdbarTower& g, const ClosedTower& delta, const ModelPtr& m) {
    return from_vertex_tuple(vt_add(ddc_model(g.at(m)), to_vertex_tuple(delta.at(m))));
}

// Smallest index i such that values[j] is the pullback of values[i] for all j > i.
// Needs at least one later model to confirm.
inline std::optional<std::size_t> stabilization_index(const std::vector<AffinePP>& vals, const Chain& c) {
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
        bool ok = true;
        for (std::size_t j = i + 1; j < vals.size() && ok; ++j) ok = pullback_special(c.between(j, i), vals[i]) == vals[j];
        if (ok) return i;
    }
    return std::nullopt;
}

inline std::optional<ClosedForm> is_green(const DdbarTower& g, const InvariantCycle& eta, const Chain& c) {
    auto delta = delta_current(eta);
    std::vector<AffinePP> w;
    for (auto& m : c.models) {
        auto x = green_form_at(g, delta, m);
        if (!x) return std::nullopt;
        w.push_back(*x);
    }
    auto i = stabilization_index(w, c);
    if (!i) return std::nullopt;
    return ClosedForm{w[*i]};
}

struct GreenReport {
    bool ok = true;
    std::optional<std::size_t> failing_model;
};

// dd^c g + delta_eta against the iota^* form of the lifting, model by model.
inline GreenReport green_property(const DdbarTower& g, const InvariantCycle& eta, const ModelPtr& base, const PPFunction& F, const Chain& c) {
    auto delta = delta_current(eta);
    auto omega = iota_upper(base, F);
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto x = green_form_at(g, delta, c[i]);
        if (!x || !(*x == pull_affine(omega, c[i]))) return {false, i};
    }
    return {};
}

// Recover a single-model form from g once dd^c g is known to stabilize.
inline FormModDdbar regularity_check(const DdbarTower& g, const Chain& c) {
    std::vector<VertexTuple> gs = g.on(c);
    std::vector<AffinePP> w;
    for (auto& t : gs) {
        auto x = from_vertex_tuple(ddc_model(t));
        if (!x) throw Error("NotStabilized", "dd^c g is not a closed form on some model");
        w.push_back(*x);
    }
    if (!stabilization_index(w, c)) throw Error("NotStabilized", "dd^c g does not stabilize on the chain");
    for (std::size_t i = 0; i + 1 < gs.size(); ++i) {
        bool ok = true;
        for (std::size_t j = i + 1; j < gs.size() && ok; ++j) ok = class_equal(zeta(c.between(j, i), gs[i]), gs[j]);
        if (ok) return {gs[i]};
    }
    throw Error("NotStabilized", "g does not stabilize on the chain");
}

// ---- degree ----

inline HomogPoly degree_on_model(const AffinePP& f) {
    auto t = cap_fundamental(f);
    auto& m = *f.model();
    if (f.degree() < static_cast<int>(m.n)) throw Error("DegreeMismatch", "degree needs top degree or more");
    HomogPoly s(m.n, std::max(0, f.degree() - static_cast<int>(m.n)));
    for (auto& fv : t.f) {
        auto d = degree(fv);
        if (!d.is_zero()) s += d;
    }
    return s;
}

inline HomogPoly degree_current(const ClosedTower& t, const Chain& c) {
    std::optional<HomogPoly> first;
    for (auto& m : c.models) {
        auto d = degree_on_model(t.at(m));
        if (!first)
            first = d;
        else if (!(d == *first) && !(d.is_zero() && first->is_zero()))
            throw Error("NotStabilized", "degree differs along the chain");
    }
    return *first;
}

// ---- the four vanishing compositions ----

struct ZeroCompositionReport {
    std::array<std::size_t, 4> checked{}, failed{};
    bool ok() const { return failed == std::array<std::size_t, 4>{}; }
};

inline ZeroCompositionReport zero_composition_suite(const Chain& c, int max_degree, std::size_t samples, std::uint32_t seed) {
    ZeroCompositionReport r;
    std::mt19937 rng(seed);
    auto& top = c.models.back();
    for (std::size_t s = 0; s < samples; ++s) {
        int k = static_cast<int>(s % (max_degree + 1));
        auto& m = c.models[s % c.size()];
        // dd^c after g on forms
        auto f = sample_affine(m, k, rng);
        ++r.checked[0];
        if (!ddc_model(cap_fundamental(f)).is_zero()) ++r.failed[0];
        // g after dd^c on forms mod ddbar
        auto t = sample_vertex_tuple(m, k, rng);
        ++r.checked[2];
        auto w = from_vertex_tuple(ddc_model(t));
        if (!w || !class_equal(cap_fundamental(*w), VertexTuple(m, k + 1))) ++r.failed[2];
        // the same on towers
        auto T = closed_family_from_top(sample_affine(top, k, rng), c);
        ++r.checked[1];
        for (auto& mm : c.models)
            if (!ddc_model(cap_fundamental(T.at(mm))).is_zero()) {
                ++r.failed[1];
                break;
            }
        auto G = ddbar_family_from_top(sample_vertex_tuple(top, k, rng), c);
        ++r.checked[3];
        for (auto& mm : c.models) {
            auto x = from_vertex_tuple(ddc_model(G.at(mm)));
            if (!x || !class_equal(cap_fundamental(*x), VertexTuple(mm, k + 1))) {
                ++r.failed[3];
                break;
            }
        }
    }
    return r;
}

}  // namespace tnarak
