#pragma once
// Rational polyhedral cones and fans, SCR polyhedral complexes through their
// cone c(Pi) in N x R>=0, vertex charts, subdivisions and refinement maps.

#include "tnarak/qlinalg.hpp"

#include <functional>
#include <map>
#include <memory>
#include <set>

namespace tnarak {

inline void for_each_combination(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// H-description and face lattice of cone(R); indices refer to R.
struct ConeGeom {
    std::size_t d = 0, dim = 0;
    std::vector<RatVec> eqs;
    std::vector<RatVec> facet_normals;
    std::vector<std::vector<std::size_t>> facet_sets;
    std::vector<std::vector<std::size_t>> faces;

    bool contains(const RatVec& x) const {
        for (auto& e : eqs)
            if (dot(e, x) != 0) return false;
        for (auto& w : facet_normals)
            if (dot(w, x) < 0) return false;
        return true;
    }
    bool contains_relint(const RatVec& x) const {
        for (auto& e : eqs)
            if (dot(e, x) != 0) return false;
        for (auto& w : facet_normals)
            if (dot(w, x) <= 0) return false;
        return true;
    }
};

inline ConeGeom cone_geometry(std::size_t d, const std::vector<RatVec>& R) {
    ConeGeom g;
    g.d = d;
    g.dim = rank(R, d);
    if (!R.empty()) g.eqs = kernel_basis(RatMat::from_rows(R, d));
    if (R.empty()) {
        g.eqs.clear();
        for (std::size_t i = 0; i < d; ++i) {
            RatVec e(d);
            e[i] = 1;
            g.eqs.push_back(e);
        }
    }
    std::vector<std::size_t> all(R.size());
    for (std::size_t i = 0; i < R.size(); ++i) all[i] = i;
    if (g.dim == 0) {
        g.faces = {all};
        return g;
    }
    if (g.dim == 1) {
        for (auto& r : R)
            if (dot(r, R[0]) <= 0) throw Error("NonSCR", "cone contains a line");
        g.facet_normals = {R[0]};
        g.facet_sets = {{}};
        g.faces = {{}, all};
        return g;
    }
    std::set<std::vector<std::size_t>> seen;
    for_each_combination(R.size(), g.dim - 1, [&](const std::vector<std::size_t>& S) {
        std::vector<RatVec> rows;
        for (auto i : S) rows.push_back(R[i]);
        if (rank(rows, d) != g.dim - 1) return;
        auto K = kernel_basis(RatMat::from_rows(rows, d));
        RatVec w;
        for (auto& k : K) {
            bool hits = false;
            for (auto& r : R)
                if (dot(k, r) != 0) hits = true;
            if (hits) {
                w = k;
                break;
            }
        }
        if (w.empty()) return;
        bool pos = false, neg = false;
        std::vector<std::size_t> Z;
        for (std::size_t i = 0; i < R.size(); ++i) {
            Rat v = dot(w, R[i]);
            if (v > 0) pos = true;
            if (v < 0) neg = true;
            if (v == 0) Z.push_back(i);
        }
        if (pos && neg) return;
        if (neg) w = Rat(-1) * w;
        if (seen.insert(Z).second) {
            g.facet_normals.push_back(w);
            g.facet_sets.push_back(Z);
        }
    });
    std::set<std::vector<std::size_t>> faces = {all};
    std::vector<std::vector<std::size_t>> frontier = {all};
    while (!frontier.empty()) {
        std::vector<std::vector<std::size_t>> next;
        for (auto& f : frontier)
            for (auto& s : g.facet_sets) {
                std::vector<std::size_t> x;
                std::set_intersection(f.begin(), f.end(), s.begin(), s.end(), std::back_inserter(x));
                if (faces.insert(x).second) next.push_back(x);
            }
        frontier = std::move(next);
    }
    g.faces.assign(faces.begin(), faces.end());
    // pointed iff the minimal face is the origin
    std::vector<RatVec> minimal;
    for (auto i : *std::min_element(g.faces.begin(), g.faces.end(), [](auto& a, auto& b) { return a.size() < b.size(); }))
        minimal.push_back(R[i]);
    if (rank(minimal, d) != 0) throw Error("NonSCR", "cone is not pointed");
    return g;
}

// Extreme rays of {x : eqs x = 0, ineqs x >= 0} for a pointed cone, primitive and sorted.
inline std::vector<RatVec> extreme_rays_h(std::size_t d, const std::vector<RatVec>& eqs, const std::vector<RatVec>& ineqs) {
    std::size_t rl = rank(eqs, d);
    std::set<RatVec> out;
    if (rl >= d) return {};
    std::size_t need = d - 1 - rl;
    for_each_combination(ineqs.size(), need, [&](const std::vector<std::size_t>& T) {
        std::vector<RatVec> M = eqs;
        for (auto i : T) M.push_back(ineqs[i]);
        if (rank(M, d) != d - 1) return;
        auto K = M.empty() ? std::vector<RatVec>{} : kernel_basis(RatMat::from_rows(M, d));
        if (M.empty()) {  // d == 1
            K = {RatVec{Rat(1)}};
        }
        for (int s : {1, -1}) {
            RatVec x = Rat(s) * K.at(0);
            bool ok = true;
            for (auto& w : ineqs)
                if (dot(w, x) < 0) ok = false;
            if (ok) out.insert(primitive(x));
        }
    });
    return {out.begin(), out.end()};
}

// A fan: a finite face-closed set of pointed cones given by ray index sets.
class Fan {
public:
    Fan() = default;

    // lattice=true scales generators to primitive integer vectors.
    static Fan from_cones(std::size_t d, const std::vector<std::vector<RatVec>>& gens, bool lattice = true, bool validate = true) {
        Fan f;
        f.d_ = d;
        f.lattice_ = lattice;
        std::vector<std::vector<RatVec>> clean;
        for (auto& gs : gens) {
            std::vector<RatVec> R;
            std::set<RatVec> dirs;
            for (auto& g : gs) {
                if (g.size() != d) throw Error("DimensionMismatch", "generator length");
                if (is_zero(g)) continue;
                RatVec key = primitive(g);
                if (!dirs.insert(key).second) continue;
                R.push_back(lattice ? key : g);
            }
            auto geo = cone_geometry(d, R);
            std::vector<RatVec> ext;
            for (auto& face : geo.faces) {
                std::vector<RatVec> fr;
                for (auto i : face) fr.push_back(R[i]);
                if (rank(fr, d) == 1) ext.push_back(fr[0]);
            }
            std::sort(ext.begin(), ext.end());
            clean.push_back(ext);
        }
        std::set<RatVec> rayset;
        for (auto& c : clean) rayset.insert(c.begin(), c.end());
        f.rays_.assign(rayset.begin(), rayset.end());
        std::set<std::vector<std::size_t>> all;
        std::vector<std::vector<std::size_t>> inputs;
        for (auto& c : clean) {
            std::vector<std::size_t> idx;
            for (auto& r : c) idx.push_back(f.ray_index(r));
            auto geo = cone_geometry(d, c);
            for (auto& face : geo.faces) {
                std::vector<std::size_t> gi;
                for (auto i : face) gi.push_back(idx[i]);
                std::sort(gi.begin(), gi.end());
                all.insert(gi);
            }
            std::sort(idx.begin(), idx.end());
            inputs.push_back(idx);
        }
        std::vector<std::vector<std::size_t>> cones(all.begin(), all.end());
        std::stable_sort(cones.begin(), cones.end(), [&](auto& a, auto& b) {
            std::size_t da = rank(f.gens_of(a), d), db = rank(f.gens_of(b), d);
            return da != db ? da < db : a < b;
        });
        f.cones_ = cones;
        for (std::size_t i = 0; i < cones.size(); ++i) {
            f.index_[cones[i]] = i;
            f.geo_.push_back(cone_geometry(d, f.gens_of(cones[i])));
        }
        for (std::size_t i = 0; i < cones.size(); ++i) {
            bool maximal = true;
            for (std::size_t j = 0; j < cones.size() && maximal; ++j)
                if (j != i && cones[j].size() > cones[i].size() &&
                    std::includes(cones[j].begin(), cones[j].end(), cones[i].begin(), cones[i].end()))
                    maximal = false;
            if (maximal) f.maximal_.push_back(i);
        }
        std::sort(f.maximal_.begin(), f.maximal_.end(), [&](std::size_t a, std::size_t b) { return f.generators(a) < f.generators(b); });
        if (validate) f.validate_intersections();
        return f;
    }

    std::size_t dim() const { return d_; }
    bool lattice() const { return lattice_; }
    const std::vector<RatVec>& rays() const { return rays_; }
    std::size_t num_cones() const { return cones_.size(); }
    const std::vector<std::size_t>& cone_rays(std::size_t c) const { return cones_.at(c); }
    const ConeGeom& geometry(std::size_t c) const { return geo_.at(c); }
    std::size_t cone_dim(std::size_t c) const { return geo_.at(c).dim; }
    const std::vector<std::size_t>& maximal() const { return maximal_; }

    std::vector<RatVec> generators(std::size_t c) const { return gens_of(cones_.at(c)); }

    std::optional<std::size_t> find_ray(const RatVec& r) const {
        auto it = std::lower_bound(rays_.begin(), rays_.end(), r);
        if (it != rays_.end() && *it == r) return std::size_t(it - rays_.begin());
        return std::nullopt;
    }
    std::optional<std::size_t> find_cone(std::vector<std::size_t> rs) const {
        std::sort(rs.begin(), rs.end());
        auto it = index_.find(rs);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t ray_cone(std::size_t r) const { return *find_cone({r}); }

    // Cones whose ray set contains all rays in rs.
    std::vector<std::size_t> cones_containing(const std::vector<std::size_t>& rs) const {
        std::vector<std::size_t> out;
        auto s = rs;
        std::sort(s.begin(), s.end());
        for (std::size_t c = 0; c < cones_.size(); ++c)
            if (std::includes(cones_[c].begin(), cones_[c].end(), s.begin(), s.end())) out.push_back(c);
        return out;
    }
    std::vector<std::size_t> maximal_containing(const std::vector<std::size_t>& rs) const {
        std::vector<std::size_t> out;
        auto s = rs;
        std::sort(s.begin(), s.end());
        for (std::size_t i = 0; i < maximal_.size(); ++i) {
            auto& c = cones_[maximal_[i]];
            if (std::includes(c.begin(), c.end(), s.begin(), s.end())) out.push_back(i);
        }
        return out;
    }

    // Smallest cone containing the point x, if any.
    std::optional<std::size_t> smallest_cone_containing(const RatVec& x) const {
        for (std::size_t c = 0; c < cones_.size(); ++c)
            if (geo_[c].contains_relint(x) || (cones_[c].empty() && is_zero(x))) return c;
        return std::nullopt;
    }

    bool is_simplicial() const {
        for (std::size_t c = 0; c < cones_.size(); ++c)
            if (cones_[c].size() != geo_[c].dim) return false;
        return true;
    }

    // Every cone's primitive rays extend to a lattice basis.
    bool is_regular() const {
        if (!lattice_ || !is_simplicial()) return false;
        for (std::size_t c = 0; c < cones_.size(); ++c) {
            auto g = generators(c);
            if (g.empty()) continue;
            for (auto& f : invariant_factors(g))
                if (f != 1) return false;
        }
        return true;
    }

    // Complete, or complete relative to the half-space boundary {boundary . x = 0} if given.
    bool is_complete(const std::optional<RatVec>& boundary = std::nullopt) const {
        if (maximal_.empty()) return false;
        for (auto m : maximal_)
            if (geo_[m].dim != d_) return false;
        std::map<std::vector<std::size_t>, int> count;
        for (auto m : maximal_) {
            auto& g = geo_[m];
            for (auto& fs : g.facet_sets) {
                std::vector<std::size_t> gi;
                for (auto i : fs) gi.push_back(cones_[m][i]);
                count[gi]++;
            }
        }
        for (auto& [fs, k] : count) {
            bool on_boundary = false;
            if (boundary) {
                on_boundary = true;
                for (auto r : fs)
                    if (dot(*boundary, rays_[r]) != 0) on_boundary = false;
            }
            if (k != (on_boundary ? 1 : 2)) return false;
        }
        return true;
    }

    // Pairs of maximal cones with their common face (cone index).
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> adjacent_pairs() const {
        std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < maximal_.size(); ++i)
            for (std::size_t j = i + 1; j < maximal_.size(); ++j) {
                auto& a = cones_[maximal_[i]];
                auto& b = cones_[maximal_[j]];
                std::vector<std::size_t> x;
                std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(x));
                auto c = find_cone(x);
                if (c) out.emplace_back(i, j, *c);
            }
        return out;
    }

    bool same_cones(const Fan& o) const {
        if (d_ != o.d_ || maximal_.size() != o.maximal_.size()) return false;
        for (std::size_t i = 0; i < maximal_.size(); ++i)
            if (generators(maximal_[i]) != o.generators(o.maximal_[i])) return false;
        return true;
    }

private:
    std::size_t ray_index(const RatVec& r) const { return *find_ray(r); }
    std::vector<RatVec> gens_of(const std::vector<std::size_t>& idx) const {
        std::vector<RatVec> g;
        for (auto i : idx) g.push_back(rays_[i]);
        return g;
    }

    void validate_intersections() const {
        for (std::size_t a = 0; a < maximal_.size(); ++a)
            for (std::size_t b = a + 1; b < maximal_.size(); ++b) {
                std::size_t ca = maximal_[a], cb = maximal_[b];
                auto& A = geo_[ca];
                auto& B = geo_[cb];
                std::vector<RatVec> eqs = A.eqs, ineqs = A.facet_normals;
                eqs.insert(eqs.end(), B.eqs.begin(), B.eqs.end());
                ineqs.insert(ineqs.end(), B.facet_normals.begin(), B.facet_normals.end());
                auto inter = extreme_rays_h(d_, eqs, ineqs);
                std::vector<std::size_t> common;
                std::set_intersection(cones_[ca].begin(), cones_[ca].end(), cones_[cb].begin(), cones_[cb].end(), std::back_inserter(common));
                std::vector<RatVec> cd;
                for (auto i : common) cd.push_back(primitive(rays_[i]));
                std::sort(cd.begin(), cd.end());
                if (inter != cd || !find_cone(common))
                    throw Error("NotAComplex", "cones " + std::to_string(a) + " and " + std::to_string(b) + " do not meet in a common face");
            }
    }

    std::size_t d_ = 0;
    bool lattice_ = true;
    std::vector<RatVec> rays_;
    std::vector<std::vector<std::size_t>> cones_;
    std::vector<ConeGeom> geo_;
    std::map<std::vector<std::size_t>, std::size_t> index_;
    std::vector<std::size_t> maximal_;
};

inline bool is_regular(const Fan& f) { return f.is_regular(); }

// Raw cell input: vertex indices into a point list and recession rays.
struct CellInput {
    std::vector<std::size_t> vertices;
    std::vector<RatVec> rays;
};

// An SCR polyhedral complex in N_R = R^n, stored through c(Pi) in R^{n+1}.
class PolyComplex {
public:
    PolyComplex() = default;

    static PolyComplex from_cones(std::size_t n, const std::vector<std::vector<RatVec>>& gens) {
        for (auto& gs : gens) {
            bool vertex = false;
            for (auto& g : gs) {
                if (g.size() != n + 1) throw Error("DimensionMismatch", "cone generator length");
                if (g[n] < 0) throw Error("NonSCR", "generator below height 0");
                if (g[n] > 0) vertex = true;
            }
            if (!vertex) throw Error("NonSCR", "cell without a vertex");
        }
        PolyComplex p;
        p.n_ = n;
        p.cone_ = std::make_shared<Fan>(Fan::from_cones(n + 1, gens, true, true));
        p.init();
        return p;
    }

    std::size_t rank() const { return n_; }
    const Fan& cone() const { return *cone_; }
    std::shared_ptr<const Fan> cone_ptr() const { return cone_; }
    bool complete() const { return complete_; }
    std::size_t num_vertices() const { return vertices_.size(); }
    const RatVec& vertex(std::size_t v) const { return vertices_.at(v); }
    const std::vector<RatVec>& vertices() const { return vertices_; }
    std::size_t vertex_ray(std::size_t v) const { return vertex_ray_.at(v); }
    // multiplicity m_v: least l with l*v integral
    Int multiplicity(std::size_t v) const { return cone_->rays()[vertex_ray_.at(v)][n_].get_num(); }
    std::optional<std::size_t> vertex_of_ray(std::size_t r) const {
        auto it = ray_vertex_.find(r);
        if (it == ray_vertex_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<std::size_t> find_vertex(const RatVec& v) const {
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (vertices_[i] == v) return i;
        return std::nullopt;
    }

    // maximal cells = maximal cones of c(Pi), same order
    std::size_t num_max_cells() const { return cone_->maximal().size(); }
    std::size_t max_cell_cone(std::size_t i) const { return cone_->maximal().at(i); }

    // cells = cones of c(Pi) with a ray above height 0
    bool is_cell(std::size_t c) const { return !cell_vertices(c).empty(); }
    std::vector<std::size_t> cell_vertices(std::size_t c) const {
        std::vector<std::size_t> vs;
        for (auto r : cone_->cone_rays(c))
            if (auto v = vertex_of_ray(r)) vs.push_back(*v);
        return vs;
    }
    std::vector<RatVec> cell_rays(std::size_t c) const {
        std::vector<RatVec> rs;
        for (auto r : cone_->cone_rays(c))
            if (!vertex_of_ray(r)) rs.push_back(RatVec(cone_->rays()[r].begin(), cone_->rays()[r].begin() + n_));
        return rs;
    }
    // direction space of a cell: spanned by differences of vertices and its rays
    std::vector<RatVec> cell_directions(std::size_t c) const {
        auto vs = cell_vertices(c);
        std::vector<RatVec> out = cell_rays(c);
        for (std::size_t i = 1; i < vs.size(); ++i) out.push_back(vertices_[vs[i]] - vertices_[vs[0]]);
        return out;
    }
    std::size_t cell_dim(std::size_t c) const { return cone_->cone_dim(c) - 1; }

    const std::vector<std::size_t>& bounded_edges() const { return edges_; }
    std::vector<std::size_t> max_cells_containing_vertex(std::size_t v) const { return cone_->maximal_containing({vertex_ray_.at(v)}); }
    std::vector<std::size_t> max_cells_containing_cone(std::size_t c) const { return cone_->maximal_containing(cone_->cone_rays(c)); }

    bool same_as(const PolyComplex& o) const { return n_ == o.n_ && cone_->same_cones(*o.cone_); }

    // Maximal cell input reconstructed from the cones (for re-building or JSON output).
    std::vector<std::vector<RatVec>> max_generators() const {
        std::vector<std::vector<RatVec>> g;
        for (auto m : cone_->maximal()) g.push_back(cone_->generators(m));
        return g;
    }

    RatVec t_form() const {
        RatVec t(n_ + 1);
        t[n_] = 1;
        return t;
    }

private:
    void init() {
        auto& rays = cone_->rays();
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (rays[r][n_] > 0) {
                ray_vertex_[r] = vertices_.size();
                vertex_ray_.push_back(r);
                RatVec v(rays[r].begin(), rays[r].begin() + n_);
                vertices_.push_back((1 / rays[r][n_]) * v);
            }
        }
        // keep vertices in ascending lex order, rays already sorted by the fan
        std::vector<std::size_t> order(vertices_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vertices_[a] < vertices_[b]; });
        std::vector<RatVec> vs;
        std::vector<std::size_t> vr;
        for (auto i : order) {
            vs.push_back(vertices_[i]);
            vr.push_back(vertex_ray_[i]);
        }
        vertices_ = vs;
        vertex_ray_ = vr;
        ray_vertex_.clear();
        for (std::size_t i = 0; i < vr.size(); ++i) ray_vertex_[vr[i]] = i;
        for (std::size_t c = 0; c < cone_->num_cones(); ++c) {
            auto& rs = cone_->cone_rays(c);
            if (rs.size() == 2 && ray_vertex_.count(rs[0]) && ray_vertex_.count(rs[1])) edges_.push_back(c);
        }
        complete_ = cone_->is_complete(t_form());
    }

    std::size_t n_ = 0;
    std::shared_ptr<Fan> cone_;
    bool complete_ = false;
    std::vector<RatVec> vertices_;
    std::vector<std::size_t> vertex_ray_;
    std::map<std::size_t, std::size_t> ray_vertex_;
    std::vector<std::size_t> edges_;
};

inline PolyComplex build_complex(std::size_t n, const std::vector<RatVec>& points, const std::vector<CellInput>& cells) {
    std::vector<std::vector<RatVec>> gens;
    for (auto& c : cells) {
        std::vector<RatVec> g;
        if (c.vertices.empty()) throw Error("NonSCR", "cell without vertices");
        for (auto v : c.vertices) {
            if (v >= points.size()) throw Error("ParseError", "vertex index out of range");
            if (points[v].size() != n) throw Error("DimensionMismatch", "point length");
            RatVec p = points[v];
            p.push_back(1);
            g.push_back(p);
        }
        for (auto r : c.rays) {
            if (r.size() != n) throw Error("DimensionMismatch", "ray length");
            r.push_back(0);
            g.push_back(r);
        }
        gens.push_back(g);
    }
    return PolyComplex::from_cones(n, gens);
}

inline const Fan& cone_over(const PolyComplex& p) { return p.cone(); }

// Recession fan: height-0 cones of c(Pi) read in N_R.
inline Fan recession_fan(const PolyComplex& p) {
    if (!p.complete()) throw Error("IncompleteInput", "recession_fan needs a complete complex");
    std::size_t n = p.rank();
    auto& f = p.cone();
    std::vector<std::vector<RatVec>> gens;
    for (std::size_t c = 0; c < f.num_cones(); ++c) {
        auto g = f.generators(c);
        bool flat = std::all_of(g.begin(), g.end(), [&](auto& r) { return r[n] == 0; });
        if (!flat || g.empty()) continue;
        std::vector<RatVec> h;
        for (auto& r : g) h.push_back(RatVec(r.begin(), r.begin() + n));
        gens.push_back(h);
    }
    if (gens.empty()) gens.push_back({});
    return Fan::from_cones(n, gens, true, false);
}

// The fan Pi(v) in N_R via (a,t) -> a - t v, with maximal cones matched to maximal cells.
struct VertexChart {
    std::size_t vertex = 0;
    Int multiplicity = 1;
    Fan fan;
    std::vector<std::size_t> max_cell;           // chart maximal index -> Pi maximal cell index
    std::map<std::size_t, std::size_t> cell_max;  // Pi maximal cell index -> chart maximal index
    std::map<std::size_t, std::size_t> ray_src;   // chart ray -> ray of c(Pi)
    std::map<std::size_t, std::size_t> src_ray;   // ray of c(Pi) -> chart ray
};

inline RatVec chart_image(const PolyComplex& p, std::size_t v, const RatVec& r) {
    std::size_t n = p.rank();
    RatVec a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = r[i] - r[n] * p.vertex(v)[i];
    return a;
}

inline VertexChart vertex_chart(const PolyComplex& p, std::size_t v) {
    if (v >= p.num_vertices()) throw Error("NotAVertex", std::to_string(v));
    VertexChart ch;
    ch.vertex = v;
    ch.multiplicity = p.multiplicity(v);
    auto& f = p.cone();
    std::size_t vr = p.vertex_ray(v);
    auto cells = p.max_cells_containing_vertex(v);
    std::vector<std::vector<RatVec>> gens;
    for (auto i : cells) {
        std::vector<RatVec> g;
        for (auto r : f.cone_rays(p.max_cell_cone(i)))
            if (r != vr) g.push_back(chart_image(p, v, f.rays()[r]));
        gens.push_back(g);
    }
    if (gens.empty()) gens.push_back({});
    ch.fan = Fan::from_cones(p.rank(), gens, false, false);
    for (auto r : f.cones_containing({vr})) {
        if (f.cone_rays(r).size() != 2) continue;
        for (auto s : f.cone_rays(r))
            if (s != vr) {
                auto cr = ch.fan.find_ray(chart_image(p, v, f.rays()[s]));
                if (cr) {
                    ch.ray_src[*cr] = s;
                    ch.src_ray[s] = *cr;
                }
            }
    }
    ch.max_cell.resize(ch.fan.maximal().size());
    for (auto i : cells) {
        std::vector<std::size_t> rs;
        for (auto r : f.cone_rays(p.max_cell_cone(i)))
            if (r != vr) rs.push_back(ch.src_ray.at(r));
        auto c = ch.fan.find_cone(rs);
        auto it = std::find(ch.fan.maximal().begin(), ch.fan.maximal().end(), *c);
        std::size_t mi = it - ch.fan.maximal().begin();
        ch.max_cell[mi] = i;
        ch.cell_max[i] = mi;
    }
    return ch;
}

struct EdgeData {
    std::size_t cone = 0;          // cone of c(Pi) over the edge
    std::size_t v1 = 0, v2 = 0;    // v1 lexicographically larger
    std::size_t ray1 = 0, ray2 = 0;  // rays of c(Pi) for v2 and v1: the edge direction in the charts of v1 and v2
};

inline EdgeData edge_data(const PolyComplex& p, std::size_t edge_cone) {
    auto& f = p.cone();
    auto& rs = f.cone_rays(edge_cone);
    if (rs.size() != 2 || !p.vertex_of_ray(rs[0]) || !p.vertex_of_ray(rs[1])) throw Error("UnboundedEdge", "cone " + std::to_string(edge_cone));
    std::size_t a = *p.vertex_of_ray(rs[0]), b = *p.vertex_of_ray(rs[1]);
    if (p.vertex(a) < p.vertex(b)) std::swap(a, b);
    EdgeData e;
    e.cone = edge_cone;
    e.v1 = a;
    e.v2 = b;
    e.ray1 = p.vertex_ray(b);  // seen from v1 the edge points to v2
    e.ray2 = p.vertex_ray(a);
    return e;
}

// Pi(sigma): projection of cells whose recession cone contains sigma (rays in N).
inline PolyComplex horizontal_star(const PolyComplex& p, const std::vector<RatVec>& sigma) {
    std::size_t n = p.rank();
    auto& f = p.cone();
    std::vector<std::size_t> srays;
    for (auto s : sigma) {
        s.push_back(0);
        auto r = f.find_ray(primitive(s));
        if (!r) throw Error("NotARecessionCone", "ray not in the recession fan");
        srays.push_back(*r);
    }
    if (!srays.empty() && !f.find_cone(srays)) throw Error("NotARecessionCone", "rays do not span a cone");
    std::size_t k = sigma.size();
    IntMat P;  // (n-k) x n integer projection with kernel span(sigma)
    if (k == 0) {
        P = int_identity(n);
    } else {
        IntMat B(n, std::vector<Int>(k));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < k; ++j) B[i][j] = primitive(sigma[j])[i].get_num();
        auto snf = smith_normal_form(B);
        for (std::size_t i = k; i < n; ++i) P.push_back(snf.U[i]);
    }
    auto proj = [&](const RatVec& x) {
        RatVec y(P.size());
        for (std::size_t i = 0; i < P.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) y[i] += Rat(P[i][j]) * x[j];
        return y;
    };
    std::vector<std::vector<RatVec>> gens;
    for (auto i : f.maximal_containing(srays)) {
        std::vector<RatVec> g;
        for (auto r : f.cone_rays(p.max_cell_cone(i))) {
            auto& x = f.rays()[r];
            RatVec y = proj(RatVec(x.begin(), x.begin() + n));
            y.push_back(x[n]);
            if (!is_zero(y)) g.push_back(y);
        }
        gens.push_back(g);
    }
    return PolyComplex::from_cones(n - k, gens);
}

// mu: each cone of c(Pi') to the smallest cone of c(Pi) containing it.
struct ModelMap {
    std::shared_ptr<const PolyComplex> source, target;
    std::vector<std::size_t> mu;

    std::size_t mu_max(std::size_t max_cell) const { return mu.at(source->max_cell_cone(max_cell)); }
    // target maximal cell containing a source maximal cell
    std::size_t max_cell_image(std::size_t max_cell) const {
        auto c = mu_max(max_cell);
        auto& m = target->cone().maximal();
        auto it = std::find(m.begin(), m.end(), c);
        if (it == m.end()) throw Error("NotProper", "maximal cone maps to a lower-dimensional cone");
        return it - m.begin();
    }
};

inline std::optional<ModelMap> refines(std::shared_ptr<const PolyComplex> fine, std::shared_ptr<const PolyComplex> coarse) {
    if (fine->rank() != coarse->rank()) return std::nullopt;
    auto& F = fine->cone();
    auto& C = coarse->cone();
    ModelMap m{fine, coarse, {}};
    for (std::size_t c = 0; c < F.num_cones(); ++c) {
        std::optional<std::size_t> best;
        auto gens = F.generators(c);
        for (std::size_t d = 0; d < C.num_cones(); ++d) {
            auto& g = C.geometry(d);
            bool ok = std::all_of(gens.begin(), gens.end(), [&](auto& x) { return g.contains(x); });
            if (ok && (!best || g.dim < C.cone_dim(*best))) best = d;
        }
        if (!best) return std::nullopt;
        m.mu.push_back(*best);
    }
    if (fine->complete() != coarse->complete()) return std::nullopt;
    if (!coarse->complete()) {
        for (auto mc : C.maximal()) {
            RatVec s(C.dim());
            for (auto& g : C.generators(mc)) s = s + g;
            bool covered = false;
            for (auto mf : F.maximal())
                if (F.geometry(mf).contains(s)) covered = true;
            if (!covered) return std::nullopt;
        }
    }
    return m;
}

inline std::optional<ModelMap> refines(const PolyComplex& fine, const PolyComplex& coarse) {
    return refines(std::make_shared<const PolyComplex>(fine), std::make_shared<const PolyComplex>(coarse));
}

// Stellar subdivision of c(Pi) at the ray through r (length n+1).
inline PolyComplex star_subdivision_ray(const PolyComplex& p, const RatVec& ray) {
    auto& f = p.cone();
    RatVec r = primitive(ray);
    auto tau = f.smallest_cone_containing(r);
    if (!tau) throw Error("PointOutsideSupport", "ray not in |c(Pi)|");
    auto& trays = f.cone_rays(*tau);
    if (trays.size() == 1 && f.rays()[trays[0]] == r) return p;
    std::vector<std::vector<RatVec>> gens;
    for (auto m : f.maximal()) {
        auto& mr = f.cone_rays(m);
        if (!std::includes(mr.begin(), mr.end(), trays.begin(), trays.end())) {
            gens.push_back(f.generators(m));
            continue;
        }
        auto& g = f.geometry(m);
        for (auto& fs : g.facet_sets) {
            std::vector<std::size_t> glob;
            for (auto i : fs) glob.push_back(mr[i]);
            if (std::includes(glob.begin(), glob.end(), trays.begin(), trays.end())) continue;
            std::vector<RatVec> ng;
            for (auto i : glob) ng.push_back(f.rays()[i]);
            ng.push_back(r);
            gens.push_back(ng);
        }
    }
    return PolyComplex::from_cones(p.rank(), gens);
}

inline PolyComplex star_subdivision(const PolyComplex& p, const RatVec& point) {
    RatVec r = point;
    r.push_back(1);
    return star_subdivision_ray(p, r);
}

struct CommonRefinement {
    PolyComplex complex;
    bool regular = false;
};

inline CommonRefinement common_refinement(const PolyComplex& a, const PolyComplex& b) {
    if (a.rank() != b.rank()) throw Error("DimensionMismatch", "common_refinement");
    if (!recession_fan(a).same_cones(recession_fan(b))) throw Error("RecessionMismatch", "recession fans differ");
    auto& A = a.cone();
    auto& B = b.cone();
    std::size_t d = A.dim();
    std::vector<std::vector<RatVec>> gens;
    for (auto ma : A.maximal())
        for (auto mb : B.maximal()) {
            auto& ga = A.geometry(ma);
            auto& gb = B.geometry(mb);
            std::vector<RatVec> eqs = ga.eqs, ineqs = ga.facet_normals;
            eqs.insert(eqs.end(), gb.eqs.begin(), gb.eqs.end());
            ineqs.insert(ineqs.end(), gb.facet_normals.begin(), gb.facet_normals.end());
            auto rays = extreme_rays_h(d, eqs, ineqs);
            if (rank(rays, d) == d) gens.push_back(rays);
        }
    CommonRefinement out;
    out.complex = PolyComplex::from_cones(a.rank(), gens);
    out.regular = out.complex.cone().is_regular();
    return out;
}

}  // namespace tnarak
