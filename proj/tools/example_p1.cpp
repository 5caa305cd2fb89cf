// Small walk through the library on the projective line.
#include "tnarak/arithchow.hpp"

#include <iostream>

using namespace tnarak;

int main() {
    auto pt = [](long x) { return RatVec{Rat(x)}; };
    // canonical model of P^1 and two refinements
    auto f1 = make_model(build_complex(1, {pt(0)}, {{{0}, {pt(1)}}, {{0}, {pt(-1)}}}));
    auto chain = default_chain(f1, 3);
    std::cout << "vertices along the chain:";
    for (auto& m : chain.models) std::cout << " " << m->num_vertices();
    std::cout << "\n";

    InvariantCycle eta{1, 1, {{{pt(1)}, 1}}};  // the point V(+)
    auto g = green_default(f1, eta);
    auto omega = is_green(g, eta, chain);
    std::cout << "Green certificate: " << (omega ? "yes" : "no") << "\n";
    std::cout << "degree of delta: " << degree_current(delta_current(eta), chain).str() << "\n";

    auto a = theta(chain, {2, 1, {{{RatVec{Rat(1), Rat(0)}}, 1}}});
    auto L = theta_inverse(a);
    std::cout << "theta_inverse lives on a model with " << L.model->num_vertices() << " vertices\n";
}
