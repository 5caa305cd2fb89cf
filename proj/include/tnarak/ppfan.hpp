#pragma once
// Piecewise polynomial functions on fans, generators phi, graded bases,
// pullback and pushforward along subdivisions, equivariant degree.

#include "tnarak/polyhedra.hpp"
#include "tnarak/polyring.hpp"

namespace tnarak {

using FanPtr = std::shared_ptr<const Fan>;

class PPFunction {
public:
    PPFunction() = default;
    PPFunction(FanPtr fan, int degree) : fan_(std::move(fan)), deg_(degree) {
        pieces_.assign(fan_->maximal().size(), HomogPoly(fan_->dim(), degree));
    }

    const FanPtr& fan() const { return fan_; }
    int degree() const { return deg_; }
    std::size_t size() const { return pieces_.size(); }
    const HomogPoly& piece(std::size_t i) const { return pieces_.at(i); }
    const std::vector<HomogPoly>& pieces() const { return pieces_; }
    void set_piece(std::size_t i, HomogPoly p) {
        if (!p.is_zero() && p.degree() != deg_) throw Error("DegreeMismatch", "piece degree");
        if (p.is_zero()) p = HomogPoly(fan_->dim(), deg_);
        pieces_.at(i) = std::move(p);
    }

    bool is_zero() const {
        return std::all_of(pieces_.begin(), pieces_.end(), [](auto& p) { return p.is_zero(); });
    }
    bool operator==(const PPFunction& o) const { return same_fan(o) && pieces_ == o.pieces_; }
    bool same_fan(const PPFunction& o) const { return fan_ == o.fan_ || fan_->same_cones(*o.fan_); }

private:
    FanPtr fan_;
    int deg_ = 0;
    std::vector<HomogPoly> pieces_;
};

inline LinSubspace cone_span(const Fan& f, std::size_t c) { return {f.dim(), f.generators(c)}; }

// Throws FaceMismatch naming the first pair of maximal cones that disagree on their common face.
inline void validate_pp(const PPFunction& f) {
    auto& fan = *f.fan();
    for (auto& [i, j, tau] : fan.adjacent_pairs())
        if (!equal_on_span(f.piece(i), f.piece(j), cone_span(fan, tau)))
            throw Error("FaceMismatch", "maximal cones " + std::to_string(i) + " and " + std::to_string(j) + " disagree on cone " + std::to_string(tau));
}

inline PPFunction make_pp(FanPtr fan, const std::vector<HomogPoly>& pieces, int degree) {
    if (pieces.size() != fan->maximal().size()) throw Error("DimensionMismatch", "one piece per maximal cone");
    PPFunction f(fan, degree);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (pieces[i].dim() != fan->dim()) throw Error("DimensionMismatch", "piece dimension");
        f.set_piece(i, pieces[i]);
    }
    validate_pp(f);
    return f;
}

inline PPFunction pp_add(const PPFunction& a, const PPFunction& b) {
    if (!a.same_fan(b)) throw Error("FanMismatch", "pp_add");
    if (a.degree() != b.degree()) throw Error("DegreeMismatch", "pp_add");
    PPFunction r(a.fan(), a.degree());
    for (std::size_t i = 0; i < a.size(); ++i) r.set_piece(i, a.piece(i) + b.piece(i));
    return r;
}
inline PPFunction pp_scale(const Rat& s, const PPFunction& a) {
    PPFunction r(a.fan(), a.degree());
    for (std::size_t i = 0; i < a.size(); ++i) r.set_piece(i, s * a.piece(i));
    return r;
}
inline PPFunction pp_sub(const PPFunction& a, const PPFunction& b) { return pp_add(a, pp_scale(-1, b)); }
inline PPFunction pp_product(const PPFunction& a, const PPFunction& b) {
    if (!a.same_fan(b)) throw Error("FanMismatch", "pp_product");
    PPFunction r(a.fan(), a.degree() + b.degree());
    for (std::size_t i = 0; i < a.size(); ++i) r.set_piece(i, a.piece(i) * b.piece(i));
    return r;
}
inline PPFunction pp_constant(FanPtr fan, const Rat& c) {
    PPFunction r(fan, 0);
    for (std::size_t i = 0; i < r.size(); ++i) r.set_piece(i, HomogPoly::constant(fan->dim(), c));
    return r;
}
// Global polynomial, same on every cone.
inline PPFunction pp_global(FanPtr fan, const HomogPoly& p) {
    PPFunction r(fan, p.degree());
    for (std::size_t i = 0; i < r.size(); ++i) r.set_piece(i, p);
    return r;
}

inline void require_simplicial(const Fan& f) {
    if (!f.is_simplicial() || (f.lattice() && !f.is_regular())) throw Error("NotRegular", "fan is not regular");
}

// Linear form on maximal cone i: 1 on ray r, 0 on the other rays of the cone.
inline RatVec dual_form(const Fan& f, std::size_t max_i, std::size_t r) {
    auto& rs = f.cone_rays(f.maximal().at(max_i));
    std::vector<RatVec> rows;
    RatVec rhs;
    for (auto s : rs) {
        rows.push_back(f.rays()[s]);
        rhs.push_back(s == r ? 1 : 0);
    }
    auto w = solve(RatMat::from_rows(rows, f.dim()), rhs);
    if (!w) throw Error("NotRegular", "rays not independent");
    return *w;
}

// Dual forms of all rays of maximal cone i, in cone ray order.
inline std::vector<RatVec> dual_forms(const Fan& f, std::size_t max_i) {
    std::vector<RatVec> out;
    for (auto r : f.cone_rays(f.maximal().at(max_i))) out.push_back(dual_form(f, max_i, r));
    return out;
}

inline PPFunction phi_ray(FanPtr fan, std::size_t ray) {
    require_simplicial(*fan);
    if (ray >= fan->rays().size()) throw Error("NotARay", std::to_string(ray));
    PPFunction r(fan, 1);
    for (auto i : fan->maximal_containing({ray})) r.set_piece(i, HomogPoly::linear(dual_form(*fan, i, ray)));
    return r;
}

inline PPFunction phi_cone(FanPtr fan, std::size_t cone) {
    PPFunction r = pp_constant(fan, 1);
    for (auto ray : fan->cone_rays(cone)) r = pp_product(r, phi_ray(fan, ray));
    return r;
}

struct GradedBasis {
    int degree = 0;
    std::vector<PPFunction> basis;
    std::size_t dim() const { return basis.size(); }
};

// Agreement constraint between pieces i and j on the span of the given vectors.
struct GlueConstraint {
    std::size_t i, j;
    std::vector<RatVec> span;
};

// Kernel of the gluing constraints on `count` pieces of degree-k polynomials in d
// variables; returned vectors are stacked monomial coefficients, piece-major.
inline std::vector<RatVec> piecewise_kernel(std::size_t d, int k, std::size_t count, const std::vector<GlueConstraint>& cons) {
    auto mons = monomials(d, k);
    std::size_t M = mons.size(), N = M * count;
    std::vector<RatVec> rows;
    for (auto& c : cons) {
        if (c.span.empty()) {
            if (k != 0) continue;
            RatVec row(N);
            row[c.i * M] = 1;
            row[c.j * M] -= 1;
            if (!is_zero(row)) rows.push_back(row);
            continue;
        }
        auto P = RatMat::from_cols(c.span, d);
        std::vector<HomogPoly> images;
        for (auto& m : mons) images.push_back(HomogPoly::monomial(m).substitute(P));
        for (auto& sm : monomials(c.span.size(), k)) {
            RatVec row(N);
            for (std::size_t a = 0; a < M; ++a) {
                Rat x = images[a].coeff(sm);
                row[c.i * M + a] += x;
                row[c.j * M + a] -= x;
            }
            if (!is_zero(row)) rows.push_back(row);
        }
    }
    if (!rows.empty()) return kernel_basis(RatMat::from_rows(rows, N));
    std::vector<RatVec> ker;
    for (std::size_t u = 0; u < N; ++u) {
        RatVec e(N);
        e[u] = 1;
        ker.push_back(e);
    }
    return ker;
}

inline std::vector<HomogPoly> split_pieces(std::size_t d, int k, const RatVec& x) {
    std::size_t M = monomials(d, k).size();
    std::vector<HomogPoly> out;
    for (std::size_t i = 0; i * M < x.size(); ++i)
        out.push_back(HomogPoly::from_coeff_vector(d, k, RatVec(x.begin() + i * M, x.begin() + (i + 1) * M)));
    return out;
}

inline RatVec stack_pieces(std::size_t d, int k, const std::vector<HomogPoly>& ps) {
    std::size_t M = monomials(d, k).size();
    RatVec out;
    for (auto& p : ps) {
        auto c = p.is_zero() ? RatVec(M) : p.coeff_vector();
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

inline std::vector<GlueConstraint> fan_constraints(const Fan& fan) {
    std::vector<GlueConstraint> cons;
    for (auto& [i, j, tau] : fan.adjacent_pairs()) cons.push_back({i, j, fan.generators(tau)});
    return cons;
}

inline GradedBasis graded_basis(FanPtr fan, int k) {
    GradedBasis gb{k, {}};
    for (auto& x : piecewise_kernel(fan->dim(), k, fan->maximal().size(), fan_constraints(*fan))) {
        auto ps = split_pieces(fan->dim(), k, x);
        PPFunction f(fan, k);
        for (std::size_t i = 0; i < ps.size(); ++i) f.set_piece(i, ps[i]);
        gb.basis.push_back(f);
    }
    return gb;
}

// Coordinates of f in the stacked monomial basis (cone-major).
inline RatVec pp_coeff_vector(const PPFunction& f) { return stack_pieces(f.fan()->dim(), f.degree(), f.pieces()); }

// Map of fans sending each maximal cone of the source into a maximal cone of the target.
struct FanMap {
    FanPtr source, target;
    std::vector<std::size_t> max_image;
};

inline std::optional<FanMap> fan_map(FanPtr fine, FanPtr coarse) {
    FanMap m{fine, coarse, {}};
    for (auto mf : fine->maximal()) {
        auto gens = fine->generators(mf);
        std::optional<std::size_t> hit;
        for (std::size_t j = 0; j < coarse->maximal().size() && !hit; ++j) {
            auto& g = coarse->geometry(coarse->maximal()[j]);
            if (std::all_of(gens.begin(), gens.end(), [&](auto& x) { return g.contains(x); })) hit = j;
        }
        if (!hit) return std::nullopt;
        m.max_image.push_back(*hit);
    }
    return m;
}

inline FanMap fan_map(const ModelMap& m) {
    FanMap f{m.source->cone_ptr(), m.target->cone_ptr(), {}};
    for (std::size_t i = 0; i < m.source->num_max_cells(); ++i) f.max_image.push_back(m.max_cell_image(i));
    return f;
}

inline PPFunction pullback(const FanMap& m, const PPFunction& f) {
    if (!f.same_fan(PPFunction(m.target, 0))) throw Error("FanMismatch", "pullback");
    PPFunction r(m.source, f.degree());
    for (std::size_t i = 0; i < r.size(); ++i) r.set_piece(i, f.piece(m.max_image[i]));
    return r;
}

inline HomogPoly product_of_forms(std::size_t d, const std::vector<RatVec>& forms) {
    HomogPoly p = HomogPoly::constant(d, 1);
    for (auto& w : forms) p = p * HomogPoly::linear(w);
    return p;
}

inline PPFunction pushforward(const FanMap& m, const PPFunction& f) {
    auto& S = *m.source;
    auto& T = *m.target;
    for (auto c : S.maximal())
        if (S.cone_dim(c) != S.dim()) throw Error("NotProper", "source maximal cone not full-dimensional");
    for (auto c : T.maximal())
        if (T.cone_dim(c) != T.dim()) throw Error("NotProper", "target maximal cone not full-dimensional");
    require_simplicial(S);
    require_simplicial(T);
    PPFunction r(m.target, f.degree());
    for (std::size_t j = 0; j < T.maximal().size(); ++j) {
        auto phi_s = product_of_forms(T.dim(), dual_forms(T, j));
        std::vector<RatFun> terms;
        bool any = false;
        for (std::size_t i = 0; i < S.maximal().size(); ++i) {
            if (m.max_image[i] != j) continue;
            any = true;
            terms.push_back({f.piece(i) * phi_s, dual_forms(S, i)});
        }
        if (!any) throw Error("NotProper", "target cone not covered");
        auto p = ratfun_sum_to_poly(terms, T.dim());
        if (!p.is_zero() && p.degree() != f.degree()) throw Error("NotPolynomial", "degree drift");
        r.set_piece(j, p);
    }
    validate_pp(r);
    return r;
}

// Localization sum over maximal cones; a polynomial of degree k - d.
inline HomogPoly degree(const PPFunction& f) {
    auto& F = *f.fan();
    if (!F.is_complete()) throw Error("IncompleteInput", "degree needs a complete fan");
    require_simplicial(F);
    std::vector<RatFun> terms;
    for (std::size_t i = 0; i < F.maximal().size(); ++i) terms.push_back({f.piece(i), dual_forms(F, i)});
    return ratfun_sum_to_poly(terms, F.dim());
}

}  // namespace tnarak
