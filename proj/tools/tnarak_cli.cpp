#include "checks.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace tnarak;
using io::json;

namespace {

enum Exit { Ok = 0, CheckFailure = 1, InputError = 2, Internal = 3 };

struct Args {
    std::vector<std::string> paths;
    std::string complex, input, cycle, lifting, coarse, kind = "pp", which = "pp-cone", suite = "core", fixtures = TNARAK_FIXTURE_DIR, out;
    std::optional<std::string> point;
    int degree = 1;
    std::size_t depth = 3;
    std::uint32_t seed = checks::Options{}.seed;
};

void emit(const Args& a, const json& j) {
    if (a.out.empty())
        std::cout << j.dump(2) << "\n";
    else
        io::write_file(a.out, j);
}

ModelPtr load_model(const std::string& path) { return make_model(io::complex_from(io::read_file(path))); }

// what a JSON file holds, judged from its keys
std::string kind_of(const json& j) {
    if (!j.is_object()) return "unknown";
    if (j.contains("rank") && j.contains("cells")) return "complex";
    if (j.contains("steps")) return "tower";
    if (j.contains("codim") && j.contains("terms")) return "cycle";
    if (j.contains("vertices") && j.contains("degree")) return "vertex-tuple";
    if (j.contains("pieces")) return "pp";
    if (j.contains("cells") && j.contains("degree")) return "affine";
    return "unknown";
}

int cmd_validate(const Args& a) {
    ModelPtr m;
    if (!a.complex.empty()) m = load_model(a.complex);
    json rep = json::array();
    bool all = true;
    for (auto& p : a.paths) {
        json r{{"path", p}};
        try {
            auto j = io::read_file(p);
            auto k = kind_of(j);
            r["kind"] = k;
            if (k == "complex")
                make_model(io::complex_from(j));
            else if (k == "tower") {
                auto t = io::tower_from(j);
                if (t.kind == "closed")
                    verify_closed(io::closed_tower_from(t), t.chain);
                else if (t.kind == "ddbar")
                    verify_ddbar(io::ddbar_tower_from(t), t.chain);
                else if (t.kind == "limit")
                    verify_limit_tower(io::limit_tower_from(t));
                else if (t.kind != "chain")
                    throw Error("ParseError", "unknown tower kind " + t.kind);
            } else if (k == "cycle") {
                auto z = io::cycle_from(j);
                if (m) cycle_class(*m, z);
            } else if (k == "unknown") {
                throw Error("ParseError", "unrecognized file");
            } else {
                if (!m) throw Error("ParseError", "--complex is needed to validate a " + k + " file");
                if (k == "vertex-tuple") io::tuple_from(j, m);
                if (k == "pp") io::pp_from(j, m->cone);
                if (k == "affine") io::affine_from(j, m);
            }
            r["ok"] = true;
        } catch (const Error& e) {
            r["ok"] = false;
            r["error"] = io::error_json(e);
            all = false;
        }
        rep.push_back(r);
    }
    emit(a, rep);
    return all ? Ok : InputError;
}

int cmd_basis(const Args& a) {
    auto m = load_model(a.complex);
    json out{{"which", a.which}, {"degree", a.degree}};
    json basis = json::array();
    if (a.which == "pp-cone" || a.which == "pp-recession") {
        auto fan = a.which == "pp-cone" ? m->cone : std::make_shared<const Fan>(recession_fan(*m->pi));
        auto b = graded_basis(fan, a.degree);
        out["dim"] = b.dim();
        for (auto& f : b.basis) basis.push_back(io::to_json(f));
    } else if (a.which == "affine") {
        auto b = affine_basis(m, a.degree);
        out["dim"] = b.size();
        for (auto& f : b) basis.push_back(io::to_json(f));
    } else if (a.which == "homology") {
        auto h = homology_presentation(m, a.degree);
        out["dim"] = h.dim;
        out["vertex_layer"] = vertex_layer_basis(m, a.degree).size();
        for (auto& c : h.basis) basis.push_back(io::to_json(c));
    } else {
        throw Error("ParseError", "unknown basis kind " + a.which);
    }
    out["basis"] = basis;
    emit(a, out);
    return Ok;
}

int cmd_ddc(const Args& a) {
    auto m = load_model(a.complex);
    auto t = io::tuple_from(io::read_file(a.input), m);
    auto d = ddc_model(t);
    json out{{"ddc", io::to_json(d)}};
    if (auto f = from_vertex_tuple(d)) out["form"] = io::to_json(*f);
    emit(a, out);
    return Ok;
}

InvariantCycle load_cycle(const Args& a, const ModelPtr& m) { return io::cycle_from(io::read_file(a.cycle), m->n); }

int cmd_delta(const Args& a) {
    auto m = load_model(a.complex);
    auto eta = load_cycle(a, m);
    if (eta.dim != m->n) throw Error("DimensionMismatch", "delta takes a horizontal cycle");
    auto c = default_chain(m, a.depth);
    auto d = delta_current(eta);
    auto j = io::to_json(d, c);
    auto vals = d.on(c);
    if (auto i = stabilization_index(vals, c))
        j["stabilizes_at"] = *i;
    else
        j["stabilizes_at"] = nullptr;
    emit(a, j);
    return Ok;
}

int cmd_green(const Args& a) {
    auto m = load_model(a.complex);
    auto eta = load_cycle(a, m);
    if (eta.dim != m->n) throw Error("DimensionMismatch", "eta must be horizontal");
    auto F = a.lifting.empty() ? cycle_class(*m, eta) : io::pp_from(io::read_file(a.lifting), m->cone);
    auto c = default_chain(m, a.depth);
    auto g = green_from_lifting(m, F, eta);
    auto j = io::to_json(g, c);
    auto cert = is_green(g, eta, c);
    j["certificate"] = cert ? io::to_json(cert->f) : json(nullptr);
    auto rep = green_property(g, eta, m, F, c);
    j["green_property"] = rep.ok;
    emit(a, j);
    return rep.ok ? Ok : Internal;
}

int cmd_push(const Args& a) {
    auto fine = load_model(a.complex), coarse = load_model(a.coarse);
    auto j = io::read_file(a.input);
    json out;
    if (a.kind == "pp") {
        auto fm = fan_map(fine->cone, coarse->cone);
        if (!fm) throw Error("NotARefinement", "fine complex does not refine the coarse one");
        out = io::to_json(pushforward(*fm, io::pp_from(j, fine->cone)));
    } else if (a.kind == "affine") {
        out = io::to_json(beta(make_refinement(fine, coarse), io::affine_from(j, fine)));
    } else if (a.kind == "tuple") {
        out = io::to_json(alpha(make_refinement(fine, coarse), io::tuple_from(j, fine)));
    } else {
        throw Error("ParseError", "unknown kind " + a.kind);
    }
    emit(a, out);
    return Ok;
}

int cmd_degree(const Args& a) {
    auto m = load_model(a.complex);
    HomogPoly d;
    if (!a.cycle.empty()) {
        auto eta = load_cycle(a, m);
        d = degree_current(delta_current(eta), default_chain(m, a.depth));
    } else {
        d = degree_on_model(io::affine_from(io::read_file(a.input), m));
    }
    if (a.out.empty()) {
        std::cout << d.str() << "\n";
    } else {
        std::ofstream f(a.out);
        if (!(f << d.str() << "\n")) throw Error("IOError", "cannot write " + a.out);
    }
    return Ok;
}

int cmd_refine(const Args& a) {
    auto m = load_model(a.complex);
    if (a.point) {
        auto j = json::parse(*a.point);
        emit(a, io::to_json(star_subdivision(*m->pi, io::vec_from(j))));
        return Ok;
    }
    auto c = default_chain(m, a.depth);
    auto j = io::tower_json(c, [](const ModelPtr&) { return json(nullptr); });
    j["kind"] = "chain";
    emit(a, j);
    return Ok;
}

int cmd_check(const Args& a) {
    auto fx = checks::load_fixtures(a.fixtures);
    checks::Options o{a.depth, a.seed};
    std::vector<checks::CheckResult> rs;
    bool ok = true;
    for (auto& f : checks::suite(a.suite)) {
        auto r = checks::run_one(f, fx, o);
        std::cerr << checks::line(r) << "\n";
        ok = ok && (r.pass || r.informational);
        rs.push_back(r);
    }
    json rep{{"suite", a.suite}, {"depth", a.depth}, {"seed", a.seed}, {"all_pass", ok}, {"results", checks::report_json(rs)}};
    emit(a, rep);
    return ok ? Ok : CheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tnarak: piecewise polynomial models for toric arithmetic intersection theory"};
    app.require_subcommand(1);
    Args a;
    auto common = [&](CLI::App* s) {
        s->add_option("--out", a.out, "write JSON here instead of stdout");
        return s;
    };
    auto need_complex = [&](CLI::App* s) { s->add_option("--complex", a.complex, "complex file")->required()->check(CLI::ExistingFile); };

    auto* validate = common(app.add_subcommand("validate", "parse and check input files"));
    validate->add_option("paths", a.paths, "files")->required()->check(CLI::ExistingFile);
    validate->add_option("--complex", a.complex, "complex for PP, affine and tuple files")->check(CLI::ExistingFile);

    auto* basis = common(app.add_subcommand("basis", "graded bases"));
    need_complex(basis);
    basis->add_option("--degree", a.degree, "degree")->check(CLI::NonNegativeNumber);
    basis->add_option("--which", a.which, "pp-cone, pp-recession, affine or homology")
        ->check(CLI::IsMember({"pp-cone", "pp-recession", "affine", "homology"}));

    auto* ddc = common(app.add_subcommand("ddc", "dd^c of a vertex tuple"));
    need_complex(ddc);
    ddc->add_option("--input", a.input, "vertex tuple")->required()->check(CLI::ExistingFile);

    auto* delta = common(app.add_subcommand("delta", "delta current of a horizontal cycle"));
    need_complex(delta);
    delta->add_option("--cycle", a.cycle, "cycle file")->required()->check(CLI::ExistingFile);
    delta->add_option("--depth", a.depth, "models in the chain")->check(CLI::PositiveNumber);

    auto* green = common(app.add_subcommand("green", "Green current of a lifting"));
    need_complex(green);
    green->add_option("--cycle", a.cycle, "horizontal cycle")->required()->check(CLI::ExistingFile);
    green->add_option("--lifting", a.lifting, "PP lifting on c(complex); default the closure class")->check(CLI::ExistingFile);
    green->add_option("--depth", a.depth, "models in the chain")->check(CLI::PositiveNumber);

    auto* push = common(app.add_subcommand("push", "push a value from a refinement down"));
    need_complex(push);
    push->add_option("--coarse", a.coarse, "coarse complex")->required()->check(CLI::ExistingFile);
    push->add_option("--input", a.input, "value on the fine complex")->required()->check(CLI::ExistingFile);
    push->add_option("--kind", a.kind, "pp, affine or tuple")->check(CLI::IsMember({"pp", "affine", "tuple"}));

    auto* degree = common(app.add_subcommand("degree", "equivariant degree"));
    need_complex(degree);
    degree->add_option("--cycle", a.cycle, "horizontal cycle: degree of its delta current")->check(CLI::ExistingFile);
    degree->add_option("--input", a.input, "affine PP function on the complex")->check(CLI::ExistingFile);
    degree->add_option("--depth", a.depth, "models in the chain")->check(CLI::PositiveNumber);

    auto* refine = common(app.add_subcommand("refine", "star subdivisions"));
    need_complex(refine);
    refine->add_option("--depth", a.depth, "length of the default chain")->check(CLI::PositiveNumber);
    refine->add_option("--point", a.point, "subdivide at this point instead, JSON array");

    auto* check = common(app.add_subcommand("check", "run a check suite"));
    check->add_option("--suite", a.suite, "acceptance, properties or core")->check(CLI::IsMember({"acceptance", "properties", "core"}));
    check->add_option("--depth", a.depth, "chain depth")->check(CLI::PositiveNumber);
    check->add_option("--seed", a.seed, "seed for sampled checks");
    check->add_option("--fixtures", a.fixtures, "fixture directory")->check(CLI::ExistingDirectory);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? Ok : InputError;
    }

    try {
        if (*validate) return cmd_validate(a);
        if (*basis) return cmd_basis(a);
        if (*ddc) return cmd_ddc(a);
        if (*delta) return cmd_delta(a);
        if (*green) return cmd_green(a);
        if (*push) return cmd_push(a);
        if (*degree) {
            if (a.cycle.empty() == a.input.empty()) throw Error("ParseError", "give exactly one of --cycle and --input");
            return cmd_degree(a);
        }
        if (*refine) return cmd_refine(a);
        if (*check) return cmd_check(a);
    } catch (const Error& e) {
        std::cerr << io::error_json(e).dump() << "\n";
        return e.kind == "RoundTripFailed" || e.kind == "InternalAssertion" ? Internal : InputError;
    } catch (const json::exception& e) {
        std::cerr << json{{"kind", "ParseError"}, {"message", e.what()}}.dump() << "\n";
        return InputError;
    } catch (const std::exception& e) {
        std::cerr << json{{"kind", "InternalAssertion"}, {"message", e.what()}}.dump() << "\n";
        return Internal;
    }
    return Internal;
}
