#pragma once
#include "tnarak/polyhedra.hpp"

namespace fx {
using namespace tnarak;

inline RatVec v(std::initializer_list<long> xs) {
    RatVec r;
    for (long x : xs) r.push_back(Rat(x));
    return r;
}

// P^1 fan read as a complex with one vertex
inline PolyComplex F1() { return build_complex(1, {v({0})}, {{{0}, {v({1})}}, {{0}, {v({-1})}}}); }
inline PolyComplex F2() { return build_complex(1, {v({0}), v({1})}, {{{0, 1}, {}}, {{1}, {v({1})}}, {{0}, {v({-1})}}}); }
inline PolyComplex F5() {
    return build_complex(1, {v({-1}), v({0}), v({1})}, {{{0, 1}, {}}, {{1, 2}, {}}, {{2}, {v({1})}}, {{0}, {v({-1})}}});
}
// vertex 1/2, m = 2
inline PolyComplex H() {
    return build_complex(1, {v({0}), {rat(1, 2)}, v({1})}, {{{0, 1}, {}}, {{1, 2}, {}}, {{2}, {v({1})}}, {{0}, {v({-1})}}});
}
inline PolyComplex F3() {
    auto a = v({1, 0}), b = v({0, 1}), c = v({-1, -1});
    return build_complex(2, {v({0, 0})}, {{{0}, {a, b}}, {{0}, {b, c}}, {{0}, {c, a}}});
}
inline PolyComplex F3sub() { return star_subdivision(F3(), v({1, 1})); }

// maximal cell index from its cone generators
inline std::size_t cell(const PolyComplex& p, std::vector<RatVec> gens) {
    std::sort(gens.begin(), gens.end());
    for (std::size_t i = 0; i < p.num_max_cells(); ++i)
        if (p.cone().generators(p.max_cell_cone(i)) == gens) return i;
    throw std::runtime_error("no such cell");
}
}  // namespace fx
