#pragma once
// JSON reading and writing. Rationals are "p/q" strings.
#include "tnarak/arithchow.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tnarak::io {

using json = nlohmann::json;

inline json to_json(const Rat& r) { return to_string(r); }
inline Rat rat_from(const json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    throw Error("ParseError", "rational must be a string or an integer");
}
inline json to_json(const RatVec& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(to_json(x));
    return a;
}
inline RatVec vec_from(const json& j) {
    if (!j.is_array()) throw Error("ParseError", "vector must be an array");
    RatVec v;
    for (auto& x : j) v.push_back(rat_from(x));
    return v;
}

inline json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("ParseError", "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error("ParseError", path + ": " + e.what());
    }
}
inline void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("IOError", "cannot write " + path);
    out << j.dump(2) << "\n";
}

// ---- polynomials ----

inline json to_json(const HomogPoly& p) {
    json c = json::object();
    for (auto& [e, x] : p.terms()) {
        std::string key;
        for (std::size_t i = 0; i < e.size(); ++i) key += (i ? "," : "") + std::to_string(e[i]);
        c[key] = to_json(x);
    }
    return {{"degree", p.degree()}, {"coeffs", c}};
}
inline HomogPoly poly_from(const json& j, std::size_t dim) {
    int k = j.at("degree").get<int>();
    HomogPoly p(dim, k);
    for (auto& [key, val] : j.at("coeffs").items()) {
        Exponent e;
        std::stringstream ss(key);
        std::string part;
        while (std::getline(ss, part, ',')) e.push_back(std::stoi(part));
        p.add_term(e, rat_from(val));
    }
    return p;
}

// ---- complexes ----

inline json to_json(const PolyComplex& p) {
    json pts = json::array(), cells = json::array();
    for (auto& v : p.vertices()) pts.push_back(to_json(v));
    for (std::size_t i = 0; i < p.num_max_cells(); ++i) {
        auto c = p.max_cell_cone(i);
        json rays = json::array();
        for (auto& r : p.cell_rays(c)) rays.push_back(to_json(r));
        cells.push_back({{"vertices", p.cell_vertices(c)}, {"rays", rays}});
    }
    return {{"rank", p.rank()}, {"points", pts}, {"cells", cells}};
}
inline PolyComplex complex_from(const json& j) {
    try {
        std::size_t n = j.at("rank").get<std::size_t>();
        std::vector<RatVec> pts;
        for (auto& x : j.at("points")) pts.push_back(vec_from(x));
        std::vector<CellInput> cells;
        for (auto& c : j.at("cells")) {
            CellInput ci;
            ci.vertices = c.at("vertices").get<std::vector<std::size_t>>();
            if (c.contains("rays"))
                for (auto& r : c.at("rays")) ci.rays.push_back(vec_from(r));
            cells.push_back(ci);
        }
        return build_complex(n, pts, cells);
    } catch (const json::exception& e) {
        throw Error("ParseError", e.what());
    }
}
inline ModelPtr model_from(const json& j) { return make_model(complex_from(j.is_string() ? read_file(j.get<std::string>()) : j)); }

// ---- piecewise polynomials ----

inline json to_json(const PPFunction& f) {
    json ps = json::array();
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!f.piece(i).is_zero()) ps.push_back({{"cone", i}, {"poly", to_json(f.piece(i))}});
    return {{"degree", f.degree()}, {"pieces", ps}};
}
inline PPFunction pp_from(const json& j, FanPtr fan) {
    PPFunction f(fan, j.at("degree").get<int>());
    for (auto& p : j.at("pieces")) f.set_piece(p.at("cone").get<std::size_t>(), poly_from(p.at("poly"), fan->dim()));
    validate_pp(f);
    return f;
}

inline json to_json(const AffinePP& f) {
    json cs = json::array();
    for (std::size_t i = 0; i < f.pieces().size(); ++i)
        if (!f.piece(i).is_zero()) cs.push_back({{"cell", i}, {"poly", to_json(f.piece(i))}});
    return {{"degree", f.degree()}, {"cells", cs}};
}
inline AffinePP affine_from(const json& j, const ModelPtr& m) {
    AffinePP f(m, j.at("degree").get<int>());
    for (auto& c : j.at("cells")) f.set_piece(c.at("cell").get<std::size_t>(), poly_from(c.at("poly"), m->n));
    validate_affine(f);
    return f;
}

inline json to_json(const VertexTuple& t) {
    json vs = json::array();
    for (std::size_t v = 0; v < t.f.size(); ++v) {
        if (t.f[v].is_zero()) continue;
        vs.push_back({{"vertex", v}, {"pieces", to_json(t.f[v]).at("pieces")}});
    }
    return {{"degree", t.degree}, {"vertices", vs}};
}
inline VertexTuple tuple_from(const json& j, const ModelPtr& m) {
    VertexTuple t(m, j.at("degree").get<int>());
    for (auto& v : j.at("vertices")) {
        auto i = v.at("vertex").get<std::size_t>();
        if (i >= m->num_vertices()) throw Error("ParseError", "vertex index out of range");
        t.f[i] = pp_from({{"degree", t.degree}, {"pieces", v.at("pieces")}}, m->chart_fans[i]);
    }
    return t;
}

inline json to_json(const EdgeTuple& t) {
    json es = json::array();
    for (std::size_t e = 0; e < t.e.size(); ++e) {
        json cs = json::array();
        for (std::size_t i = 0; i < t.e[e].size(); ++i)
            if (!t.e[e][i].is_zero()) cs.push_back({{"cell", t.model->edge_cells[e][i]}, {"poly", to_json(t.e[e][i])}});
        if (!cs.empty()) es.push_back({{"edge", e}, {"cells", cs}});
    }
    return {{"degree", t.degree}, {"edges", es}};
}

// ---- cycles ----

inline json to_json(const InvariantCycle& z) {
    json ts = json::array();
    for (auto& t : z.terms) {
        json cone = json::array();
        for (auto& g : t.cone) cone.push_back(to_json(g));
        ts.push_back({{"cone", cone}, {"coeff", to_json(t.coeff)}});
    }
    return {{"codim", z.codim}, {"dim", z.dim}, {"terms", ts}};
}
// dim defaults to the ray length of the first term
inline InvariantCycle cycle_from(const json& j, std::size_t dim = 0) {
    InvariantCycle z;
    z.codim = j.at("codim").get<int>();
    z.dim = j.contains("dim") ? j.at("dim").get<std::size_t>() : dim;
    for (auto& t : j.at("terms")) {
        CycleTerm c;
        for (auto& g : t.at("cone")) c.cone.push_back(vec_from(g));
        c.coeff = rat_from(t.at("coeff"));
        if (!c.cone.empty() && z.dim == 0) z.dim = c.cone[0].size();
        if (static_cast<int>(c.cone.size()) != z.codim) throw Error("ParseError", "cone size differs from codim");
        z.terms.push_back(c);
    }
    if (z.dim == 0) throw Error("ParseError", "cycle dimension unknown");
    return z;
}

// ---- towers ----

inline json tower_json(const Chain& c, const std::function<json(const ModelPtr&)>& value) {
    json steps = json::array();
    for (auto& m : c.models) steps.push_back({{"complex", to_json(*m->pi)}, {"value", value(m)}});
    return {{"steps", steps}};
}
inline json to_json(const ClosedTower& t, const Chain& c) {
    auto j = tower_json(c, [&](const ModelPtr& m) { return to_json(t.at(m)); });
    j["kind"] = "closed";
    return j;
}
inline json to_json(const DdbarTower& t, const Chain& c) {
    auto j = tower_json(c, [&](const ModelPtr& m) { return to_json(t.at(m)); });
    j["kind"] = "ddbar";
    return j;
}
inline json to_json(const LimitTower& t) {
    std::size_t i = 0;
    auto j = tower_json(t.chain, [&](const ModelPtr&) { return to_json(t.values[i++]); });
    j["kind"] = "limit";
    return j;
}

struct TowerFile {
    std::string kind;
    Chain chain;
    std::vector<json> values;
};
inline TowerFile tower_from(const json& j) {
    TowerFile t;
    t.kind = j.at("kind").get<std::string>();
    std::vector<ModelPtr> ms;
    for (auto& s : j.at("steps")) {
        ms.push_back(model_from(s.at("complex")));
        t.values.push_back(s.at("value"));
    }
    t.chain = make_chain(ms);
    return t;
}
inline ClosedTower closed_tower_from(const TowerFile& f) {
    std::vector<std::pair<ModelPtr, AffinePP>> vals;
    for (std::size_t i = 0; i < f.chain.size(); ++i) vals.push_back({f.chain[i], affine_from(f.values[i], f.chain[i])});
    return ClosedTower::family(vals);
}
inline DdbarTower ddbar_tower_from(const TowerFile& f) {
    std::vector<std::pair<ModelPtr, VertexTuple>> vals;
    for (std::size_t i = 0; i < f.chain.size(); ++i) vals.push_back({f.chain[i], tuple_from(f.values[i], f.chain[i])});
    return DdbarTower::family(vals);
}
inline LimitTower limit_tower_from(const TowerFile& f) {
    LimitTower t{f.chain, {}};
    for (std::size_t i = 0; i < f.chain.size(); ++i) t.values.push_back(pp_from(f.values[i], f.chain[i]->cone));
    return t;
}

inline json error_json(const Error& e) { return {{"kind", e.kind}, {"message", e.what()}}; }

}  // namespace tnarak::io
