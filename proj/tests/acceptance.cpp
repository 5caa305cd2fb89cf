// Runs the acceptance criteria on the shipped fixtures; one line per criterion.
#include "checks.hpp"

#include <iostream>

int main(int argc, char** argv) {
    using namespace tnarak::checks;
    std::string dir = argc > 1 ? argv[1] : TNARAK_FIXTURE_DIR;
    Fixtures fx;
    try {
        fx = load_fixtures(dir);
    } catch (const tnarak::Error& e) {
        std::cerr << "cannot load fixtures: " << e.what() << "\n";
        return 2;
    }
    Options o;
    int failed = 0;
    for (auto& f : acceptance_checks()) {
        auto r = run_one(f, fx, o);
        std::cout << line(r) << "  [" << r.seconds << "s]" << std::endl;
        if (!r.pass) ++failed;
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
    return failed ? 1 : 0;
}
