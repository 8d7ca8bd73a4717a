#include "tameforge/reports.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

using namespace tameforge;

namespace {

struct Options {
    std::string datum, galois, chars, field, out, csv, generators;
    std::int64_t q = 3;
    std::optional<size_t> bound;
    std::uint64_t seed = 1;
    std::optional<size_t> dim_w, dim_w13;
    size_t dim_w0 = 0;
    std::string scale = "1";
    bool inject = false;
    bool require_ge = false;
};

size_t element_bound(const Options& o) {
    if (o.bound) return *o.bound;
    if (const char* env = std::getenv("TAMEFORGE_MAX_ELEMENTS")) {
        try {
            size_t used = 0;
            auto v = std::stoull(env, &used);
            if (used == std::string(env).size() && v > 0) return static_cast<size_t>(v);
        } catch (const std::logic_error&) {
        }
        throw Error("MalformedInput", "TAMEFORGE_MAX_ELEMENTS must be a positive integer", {{"value", env}});
    }
    return kDefaultElementBound;
}

void require(const std::string& value, const char* flag) {
    if (value.empty()) throw Error("MissingArgument", std::string("missing required flag ") + flag);
}

void emit(const Options& o, const Json& j) {
    std::string text = j.dump(2) + "\n";
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw Error("FileNotWritable", "cannot write '" + o.out + "'", {{"path", o.out}});
    f << text;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("FileNotWritable", "cannot write '" + path + "'", {{"path", path}});
    f << text;
}

struct Loaded {
    std::shared_ptr<const RootDatum> datum;
    std::shared_ptr<const GaloisAction> action;
};

Loaded load_action(const Options& o) {
    require(o.datum, "--datum");
    Loaded l;
    l.datum = std::make_shared<const RootDatum>(parse_datum(read_json_file(o.datum)));
    Json g = o.galois.empty() ? Json{{"generators", Json::array()}} : read_json_file(o.galois);
    l.action = parse_galois(g, l.datum, element_bound(o));
    return l;
}

Json cmd_tower(const Options& o) {
    auto l = load_action(o);
    require(o.chars, "--chars");
    auto data = parse_character_data(read_json_file(o.chars), l.action);
    return tower_json(*l.datum, recover_tower(data));
}

Json cmd_generic(const Options& o) {
    auto l = load_action(o);
    require(o.chars, "--chars");
    require(o.field, "--field");
    auto [p, m] = parse_field_spec(o.field);
    auto data = parse_character_data(read_json_file(o.chars), l.action);
    return permissibility_json(*l.datum, permissibility_report(data, p, m, o.require_ge), p);
}

Json cmd_torsion(const Options& o) {
    require(o.datum, "--datum");
    require(o.field, "--field");
    auto datum = parse_datum(read_json_file(o.datum));
    auto p = parse_field_spec(o.field).first;
    return torsion_json(torsion_report(datum, p), p);
}

std::vector<FpMat> default_weil_generators(std::int64_t p, size_t n) {
    size_t d = 2 * n;
    FpMat t = fp::identity(d), s = fp::identity(d);
    t[0][n] = 1;
    s[0][0] = s[n][n] = 0;
    s[0][n] = p - 1;
    s[n][0] = 1;
    std::vector<FpMat> gens{t, s};
    if (n > 1) {
        FpMat c(d, FpVec(d, 0));
        for (size_t i = 0; i < n; ++i) {
            c[(i + 1) % n][i] = 1;
            c[n + (i + 1) % n][n + i] = 1;
        }
        gens.push_back(c);
    }
    return gens;
}

Json cmd_weil(const Options& o) {
    require(o.field, "--field");
    auto p = parse_field_spec(o.field).first;
    size_t dim = o.dim_w.value_or(2);
    if (dim == 0 || dim % 2) throw Error("OddDimension", "dim W must be positive and even");
    auto space = SymplecticSpace::standard(p, dim / 2);
    HeisenbergRep rep(space, standard_polarization(space));
    std::vector<FpMat> gens;
    if (o.generators.empty()) {
        gens = default_weil_generators(p, dim / 2);
    } else {
        for (const auto& g : read_json_file(o.generators).at("generators")) gens.push_back(g.get<FpMat>());
    }
    auto ext = weil_extend(rep, gens, element_bound(o));
    auto check = verify_weil(rep, ext);
    auto group = FiniteGroup::from_elements(ext.elements, [p](const FpMat& a, const FpMat& b) { return fp::mul(a, b, p); });
    if (!o.csv.empty()) {
        std::vector<Cyclotomic> chi;
        for (const auto& m : ext.omega) chi.push_back(m.trace());
        write_text(o.csv, character_csv(group, chi));
    }
    Json j = weil_json(rep, ext, check, group);
    if (!check.pass()) throw TheoremViolation("Weil extension fails its exact checks", {{"report", j.dump()}});
    return j;
}

Json cmd_intertwine(const Options& o) {
    require(o.field, "--field");
    auto p = parse_field_spec(o.field).first;
    size_t w13;
    if (o.dim_w13) {
        w13 = *o.dim_w13;
    } else {
        size_t w = o.dim_w.value_or(2);
        if (w < o.dim_w0) throw Error("MalformedInput", "dim W0 exceeds dim W");
        w13 = w - o.dim_w0;
    }
    Cyclotomic c(parse_rational(o.scale));
    auto r = run_intertwining(p, w13, o.dim_w0, c, o.seed);
    Json j = intertwining_json(r);
    if (!r.pass()) throw TheoremViolation("intertwining checks fail", {{"report", j.dump()}});
    return j;
}

Json cmd_distinction(const Options& o) {
    auto d = build_gl2(o.q, element_bound(o));
    auto orbits = involution_orbits(d.group, default_seeds(d.group));
    Json reports = Json::array();
    for (size_t i = 0; i < orbits.size(); ++i)
        for (auto k : cuspidal_parameters(o.q)) reports.push_back(distinction_json(theorem_sides(d, orbits[i], i, k, o.inject)));
    if (!o.csv.empty()) {
        std::string text;
        for (auto k : cuspidal_parameters(o.q)) text += "# rho_param " + std::to_string(k) + "\n" + character_csv(d.group, cuspidal_character(d, k));
        write_text(o.csv, text);
    }
    return {{"q", o.q}, {"group_order", d.group.order()}, {"orbit_count", orbits.size()}, {"reports", reports}};
}

bool selftest_a1a1_tower() {
    Json datum = {{"rank", 2}, {"roots", {{2, 0}, {-2, 0}, {0, 2}, {0, -2}}}, {"coroots", {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}}};
    Json galois = {{"generators", {{{-1, 0}, {0, -1}}}}, {"ramification_index", 2}};
    Json chars = {{"orbit_depths", {{{"orbit_rep", {2, 0}}, {"depth", "1/2"}}, {{"orbit_rep", {0, 2}}, {"depth", "3/2"}}}},
                  {"rho_depth", "3/2"},
                  {"levi_H", Json::array()}};
    auto d = std::make_shared<const RootDatum>(parse_datum(datum));
    auto data = parse_character_data(chars, parse_galois(galois, d));
    auto t = recover_tower(data);
    return t.d == 2 && t.jumps() == std::vector<Q>{Q(1, 2), Q(3, 2)};
}

Json cmd_selftest(const Options& o) {
    Json checks = Json::array();
    bool all = true;
    auto record = [&](const std::string& name, auto fn) {
        bool ok = false;
        std::string note;
        try {
            ok = fn();
        } catch (const Error& e) {
            note = e.code() + ": " + e.what();
        }
        all = all && ok;
        Json c = {{"name", name}, {"pass", ok}};
        if (!note.empty()) c["note"] = note;
        checks.push_back(c);
    };
    record("tower_a1xa1", [] { return selftest_a1a1_tower(); });
    record("torsion_gl_sl", [] {
        return !torsion_report(gl_datum(3), 3).condition4_required && torsion_report(sl_datum(3), 3).condition4_required &&
               !torsion_report(sl_datum(3), 5).condition4_required;
    });
    record("heisenberg_p3", [] {
        auto space = SymplecticSpace::standard(3, 1);
        HeisenbergGroup h(space);
        HeisenbergRep rep(space, standard_polarization(space));
        auto chi = rep.linear_rep(h).class_function();
        return character_pairing(chi, chi) == Cyclotomic(1);
    });
    record("weil_sl2_f3", [] {
        auto space = SymplecticSpace::standard(3, 1);
        HeisenbergRep rep(space, standard_polarization(space));
        auto ext = weil_extend(rep, default_weil_generators(3, 1));
        return ext.elements.size() == 24 && verify_weil(rep, ext).pass();
    });
    record("intertwining_p3", [&] { return run_intertwining(3, 2, 2, Cyclotomic(1), o.seed).pass(); });
    record("distinction_q3", [] {
        for (const auto& r : run_distinction(3))
            if (!r.equal()) return false;
        return true;
    });
    return {{"checks", checks}, {"pass", all}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tameforge: exact finite models for tame supercuspidal constructions"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "Write the JSON report here instead of stdout");
        sub->add_option("--bound-group-size", o.bound, "Maximum number of enumerated group elements");
        sub->add_option("--seed", o.seed, "Seed for sampled checks");
    };
    auto* tower = app.add_subcommand("tower", "Recover the Levi tower from depth data");
    auto* generic = app.add_subcommand("generic", "Permissibility and genericity report");
    auto* torsion = app.add_subcommand("torsion", "Torsion-prime classification");
    auto* weil = app.add_subcommand("weil", "Weil extension of a Heisenberg representation");
    auto* inter = app.add_subcommand("intertwine", "Intertwining space of a fibered sum");
    auto* dist = app.add_subcommand("distinction", "Distinction multiplicity formula on GL_2(F_q)");
    auto* self = app.add_subcommand("selftest", "Quick invariant suite");
    for (auto* sub : {tower, generic}) {
        sub->add_option("--datum", o.datum, "Root datum JSON");
        sub->add_option("--galois", o.galois, "Galois action JSON");
        sub->add_option("--chars", o.chars, "Character data JSON");
    }
    generic->add_option("--field", o.field, "Residue field p,m");
    generic->add_flag("--require-ge", o.require_ge, "Check GE2 even where it is implied");
    torsion->add_option("--datum", o.datum, "Root datum JSON");
    torsion->add_option("--field", o.field, "Prime p");
    weil->add_option("--field", o.field, "Prime p");
    weil->add_option("--dim-w", o.dim_w, "Dimension of W");
    weil->add_option("--generators", o.generators, "JSON {generators: [[[int]]]} of symplectic matrices");
    weil->add_option("--csv", o.csv, "Write the character table of omega as CSV");
    inter->add_option("--field", o.field, "Prime p");
    inter->add_option("--dim-w", o.dim_w, "Dimension of W");
    inter->add_option("--dim-w13", o.dim_w13, "Dimension of W13 (overrides --dim-w)");
    inter->add_option("--dim-w0", o.dim_w0, "Dimension of W0");
    inter->add_option("--scale", o.scale, "Scalar c as a rational");
    dist->add_option("--q", o.q, "Field order");
    dist->add_flag("--inject-violation", o.inject, "Test mode: perturb the right-hand side");
    dist->add_option("--csv", o.csv, "Write cuspidal character tables as CSV");
    for (auto* sub : {tower, generic, torsion, weil, inter, dist, self}) common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << error_json(Error("UsageError", e.what())).dump(2) << "\n";
        return 1;
    }

    try {
        Json result;
        if (*tower) result = cmd_tower(o);
        else if (*generic) result = cmd_generic(o);
        else if (*torsion) result = cmd_torsion(o);
        else if (*weil) result = cmd_weil(o);
        else if (*inter) result = cmd_intertwine(o);
        else if (*dist) result = cmd_distinction(o);
        else result = cmd_selftest(o);
        emit(o, result);
        if (*self && !result.at("pass").get<bool>()) return 2;
        return 0;
    } catch (const TheoremViolation& e) {
        std::cout << error_json(e).dump(2) << "\n";
        return 2;
    } catch (const Error& e) {
        std::cout << error_json(e).dump(2) << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cout << error_json(Error("MalformedInput", e.what())).dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cout << error_json(Error("InternalError", e.what())).dump(2) << "\n";
        return 1;
    }
}
