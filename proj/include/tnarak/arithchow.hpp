#pragma once
#include "tnarak/limits.hpp"

namespace tnarak {

// ---- cycles ----

inline InvariantCycle normalize_cycle(const InvariantCycle& z) {
    std::map<std::vector<RatVec>, Rat> acc;
    for (auto& t : z.terms) {
        std::vector<RatVec> g;
        for (auto& x : t.cone) g.push_back(primitive(x));
        std::sort(g.begin(), g.end());
        acc[g] += t.coeff;
    }
    InvariantCycle out{z.dim, z.codim, {}};
    for (auto& [g, c] : acc)
        if (c != 0) out.terms.push_back({g, c});
    return out;
}

inline bool cycle_equal(const InvariantCycle& a, const InvariantCycle& b) {
    auto x = normalize_cycle(a), y = normalize_cycle(b);
    if (x.terms.empty() && y.terms.empty()) return true;
    if (x.dim != y.dim || x.codim != y.codim || x.terms.size() != y.terms.size()) return false;
    for (std::size_t i = 0; i < x.terms.size(); ++i)
        if (x.terms[i].cone != y.terms[i].cone || x.terms[i].coeff != y.terms[i].coeff) return false;
    return true;
}

// Model-level cycle split into its height-0 terms (still model level) and the rest.
inline std::pair<InvariantCycle, InvariantCycle> split_cycle(const InvariantCycle& z) {
    InvariantCycle h{z.dim, z.codim, {}}, v{z.dim, z.codim, {}};
    for (auto& t : z.terms) {
        bool flat = std::all_of(t.cone.begin(), t.cone.end(), [](auto& g) { return g.back() == 0; });
        (flat ? h : v).terms.push_back(t);
    }
    return {h, v};
}

// F as a rational combination of the classes phi_tau of its degree; absent when F is
// not cycle-supported.
inline std::optional<InvariantCycle> cycle_of(const ModelPtr& m, const PPFunction& F) {
    auto& f = *m->cone;
    int k = F.degree();
    InvariantCycle z{m->n + 1, k, {}};
    if (F.is_zero()) return z;
    std::vector<std::size_t> cones;
    std::vector<RatVec> cols;
    for (std::size_t c = 0; c < f.num_cones(); ++c)
        if (static_cast<int>(f.cone_rays(c).size()) == k) {
            cones.push_back(c);
            cols.push_back(pp_coeff_vector(phi_cone(m->cone, c)));
        }
    auto rhs = pp_coeff_vector(F);
    if (cols.empty()) return std::nullopt;
    auto a = solve(RatMat::from_cols(cols, rhs.size()), rhs);
    if (!a) return std::nullopt;
    for (std::size_t i = 0; i < cones.size(); ++i)
        if ((*a)[i] != 0) z.terms.push_back({f.generators(cones[i]), (*a)[i]});
    return z;
}

// div(chi^w) on V(sigma): sum over codim-1 cofaces tau of <w, u_tau> V(tau).
inline InvariantCycle eigen_divisor(const ModelPtr& m, const std::vector<RatVec>& sigma, const RatVec& w) {
    auto& f = *m->cone;
    if (w.size() != m->n + 1) throw Error("DimensionMismatch", "weight lives in M x Z");
    std::vector<std::size_t> rs;
    for (auto& g : sigma) {
        if (dot(w, g) != 0) throw Error("WeightNotOrthogonal", "weight does not vanish on the cone");
        auto r = f.find_ray(primitive(g));
        if (!r) throw Error("NotACone", "generator is not a ray");
        rs.push_back(*r);
    }
    std::sort(rs.begin(), rs.end());
    if (!f.find_cone(rs)) throw Error("NotACone", "generators do not span a cone");
    InvariantCycle z{m->n + 1, static_cast<int>(rs.size()) + 1, {}};
    for (std::size_t r = 0; r < f.rays().size(); ++r) {
        if (std::binary_search(rs.begin(), rs.end(), r)) continue;
        auto x = rs;
        x.push_back(r);
        auto c = f.find_cone(x);
        if (!c) continue;
        Rat a = dot(w, f.rays()[r]);
        if (a != 0) z.terms.push_back({f.generators(*c), a});
    }
    return z;
}

inline std::vector<RatVec> at_height_zero(const std::vector<RatVec>& sigma) {
    auto out = sigma;
    for (auto& g : out) g.push_back(0);
    return out;
}

// -div_nu(f) is the vertical part of div(f) on the model; returned as a tower of
// vertex tuples. W = V(sigma) is horizontal.
inline DdbarTower div_nu(const std::vector<RatVec>& sigma, const RatVec& w) {
    return DdbarTower::rule([sigma, w](const ModelPtr& m) {
        auto vert = split_cycle(eigen_divisor(m, at_height_zero(sigma), w)).second;
        return vertical_decomposition(m, pp_scale(-1, cycle_class(*m, vert)));
    });
}

struct PoincareLelongReport {
    bool ok = true;
    std::optional<std::size_t> failing_model;
};

// dd^c(-div_nu f) against delta of chi[W] - div(f), model by model.
inline PoincareLelongReport poincare_lelong_check(const std::vector<RatVec>& sigma, const RatVec& w, const Chain& c) {
    auto dn = div_nu(sigma, w);
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto& m = c[i];
        auto lhs = from_vertex_tuple(ddc_model(vt_scale(-1, dn.at(m))));
        InvariantCycle W{m->n + 1, static_cast<int>(sigma.size()), {{at_height_zero(sigma), 1}}};
        auto horiz = split_cycle(eigen_divisor(m, at_height_zero(sigma), w)).first;
        auto chiW = pp_product(pp_global(m->cone, HomogPoly::linear(w)), cycle_class(*m, W));
        auto rhs = iota_upper(m, pp_sub(chiW, cycle_class(*m, horiz)));
        if (!lhs || !(*lhs == rhs)) return {false, i};
    }
    return {};
}

// ---- the direct limit ----

struct LimitClass {
    ModelPtr model;
    PPFunction F;
};

inline bool limit_equal(const LimitClass& a, const LimitClass& b) {
    auto m = common_model(a.model, b.model);
    auto x = pull_pp(a.F, a.model, m), y = pull_pp(b.F, b.model, m);
    if (x.is_zero() && y.is_zero()) return true;
    return x.degree() == y.degree() && x.pieces() == y.pieces();
}
inline LimitClass limit_add(const LimitClass& a, const LimitClass& b) {
    auto m = common_model(a.model, b.model);
    return {m, pp_add(pull_pp(a.F, a.model, m), pull_pp(b.F, b.model, m))};
}
inline LimitClass limit_mul(const LimitClass& a, const LimitClass& b) {
    auto m = common_model(a.model, b.model);
    return {m, pp_product(pull_pp(a.F, a.model, m), pull_pp(b.F, b.model, m))};
}

struct ArithCycle {
    InvariantCycle eta;  // horizontal
    ModelPtr model;      // where the lifting lives
    PPFunction lifting;
    DdbarTower g;
    Chain chain;
    std::optional<ClosedForm> certificate;
};

inline ArithCycle theta(const Chain& c, const InvariantCycle& z) {
    auto& m = c[0];
    if (z.dim != m->n + 1) throw Error("DimensionMismatch", "theta takes a model-level cycle");
    ArithCycle a;
    a.eta = normalize_cycle(horizontal_part(z));
    a.model = m;
    a.lifting = cycle_class(*m, z);
    a.g = green_from_lifting(m, a.lifting, a.eta);
    a.chain = c;
    a.certificate = is_green(a.g, a.eta, c);
    return a;
}
inline ArithCycle theta(const ModelPtr& m, const InvariantCycle& z, std::size_t depth = 3) { return theta(default_chain(m, depth), z); }

inline LimitClass theta_inverse(const ArithCycle& a) {
    if (!a.certificate) throw Error("NoCertificate", "the Green current has no stabilized form on the chain");
    auto& m = a.certificate->model();
    LimitClass r{m, pp_add(cycle_class(*m, a.eta), iota_lower(a.g.at(m)))};
    if (!limit_equal(r, {a.model, a.lifting})) throw Error("RoundTripFailed", "theta_inverse does not return the lifting");
    return r;
}

inline ArithCycle arith_product(const ArithCycle& a, const ArithCycle& b) {
    auto p = limit_mul(theta_inverse(a), theta_inverse(b));
    auto z = cycle_of(p.model, p.F);
    if (!z) throw Error("NotCycleSupported", "product class is not a combination of orbit closures");
    auto depth = std::max(a.chain.size(), b.chain.size());
    return theta(p.model == a.model ? a.chain : default_chain(p.model, depth), *z);
}

// ---- the inverse limit ----

struct LimitTower {
    Chain chain;
    std::vector<PPFunction> values;  // on c(chain[i])
};

inline void verify_limit_tower(const LimitTower& t) {
    auto& c = t.chain;
    if (t.values.size() != c.size()) throw Error("DimensionMismatch", "one value per model");
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        auto fm = fan_map(c[i + 1]->cone, c[i]->cone);
        if (!fm || !(pushforward(*fm, t.values[i + 1]) == t.values[i])) throw Error("CompatibilityViolation", witness_pair(i));
    }
}

struct ExtendedArithCycle {
    InvariantCycle eta;
    DdbarTower g;
    Chain chain;
};

inline ExtendedArithCycle theta_prime(const LimitTower& t) {
    verify_limit_tower(t);
    auto& c = t.chain;
    ExtendedArithCycle e;
    e.chain = c;
    std::vector<std::pair<ModelPtr, VertexTuple>> gs;
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto z = cycle_of(c[i], t.values[i]);
        if (!z) throw Error("NotCycleSupported", "value on model " + std::to_string(i));
        auto eta = normalize_cycle(horizontal_part(*z));
        if (i == 0)
            e.eta = eta;
        else if (!cycle_equal(eta, e.eta))
            throw Error("CompatibilityViolation", "horizontal parts differ on model " + std::to_string(i));
        gs.push_back({c[i], vertical_decomposition(c[i], pp_sub(t.values[i], cycle_class(*c[i], e.eta)))});
    }
    e.g = DdbarTower::family(gs);
    return e;
}

inline LimitTower theta_prime_inverse(const ExtendedArithCycle& e) {
    LimitTower t{e.chain, {}};
    for (auto& m : e.chain.models) t.values.push_back(pp_add(cycle_class(*m, e.eta), iota_lower(e.g.at(m))));
    verify_limit_tower(t);
    return t;
}

inline bool tower_equal(const LimitTower& a, const LimitTower& b) {
    if (a.values.size() != b.values.size()) return false;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        auto& x = a.values[i];
        auto& y = b.values[i];
        if (x.is_zero() && y.is_zero()) continue;
        if (!(x == y)) return false;
    }
    return true;
}

// On models that do not refine c.model the value is pushed down from the first one
// that does (projection formula).
inline LimitTower module_action(const LimitClass& c, const LimitTower& t) {
    auto& ch = t.chain;
    std::optional<std::size_t> first;
    for (std::size_t i = 0; i < ch.size() && !first; ++i)
        if (ch[i] == c.model || refines(ch[i]->pi, c.model->pi)) first = i;
    if (!first) throw Error("NotARefinement", "no model of the chain refines the model of the class");
    LimitTower out{ch, std::vector<PPFunction>(ch.size())};
    for (std::size_t i = *first; i < ch.size(); ++i) out.values[i] = pp_product(pull_pp(c.F, c.model, ch[i]), t.values[i]);
    for (std::size_t i = 0; i < *first; ++i) out.values[i] = pushforward(*fan_map(ch[*first]->cone, ch[i]->cone), out.values[*first]);
    verify_limit_tower(out);
    return out;
}

// Tower of closures of a horizontal cycle.
inline LimitTower closure_tower(const InvariantCycle& eta, const Chain& c) {
    LimitTower t{c, {}};
    for (auto& m : c.models) t.values.push_back(cycle_class(*m, eta));
    return t;
}

}  // namespace tnarak
