#include "tameforge/reports.hpp"

#include <sstream>

namespace tameforge {

Json to_json(const Q& q) { return to_string(q); }

Json to_json(const Cyclotomic& c) {
    Json coeffs = Json::array();
    for (const auto& x : c.coeffs()) coeffs.push_back(to_string(x));
    return {{"level", c.level()}, {"coeffs", coeffs}};
}

Json to_json(const CycMatrix& m) {
    Json rows = Json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Json roots_json(const RootDatum& datum, const RootSet& set) {
    Json out = Json::array();
    for (auto r : set) out.push_back(datum.root(r));
    return out;
}

Json error_json(const Error& e) {
    Json details = Json::object();
    for (const auto& [k, v] : e.details()) details[k] = v;
    return {{"error", {{"code", e.code()}, {"message", e.what()}, {"details", details}}}};
}

Json tower_json(const RootDatum& datum, const LeviTower& tower) {
    Json depths = Json::array(), jumps = Json::array(), subs = Json::array();
    for (const auto& r : tower.depths) depths.push_back(to_json(r));
    for (const auto& r : tower.jumps()) jumps.push_back(to_json(r));
    for (const auto& s : tower.subsystems) subs.push_back(roots_json(datum, s));
    return {{"d", tower.d}, {"depths", depths}, {"jumps", jumps}, {"subsystems", subs}};
}

Json torsion_json(const TorsionReport& r, std::int64_t p) {
    return {{"p", p},
            {"condition4_required", r.condition4_required},
            {"reason", r.reason},
            {"quotient_torsion", r.quotient_torsion.get_str()},
            {"types", r.types}};
}

Json permissibility_json(const RootDatum& datum, const PermissibilityReport& r, std::int64_t p) {
    Json levels = Json::array();
    for (const auto& lv : r.levels) {
        Json coords = Json::array();
        for (auto c : lv.functional.functional.coords) coords.push_back(c);
        levels.push_back({{"level", lv.level},
                          {"coords", coords},
                          {"free_dimension", lv.functional.free_dimension},
                          {"ge1", lv.report.ge1},
                          {"ge2", lv.report.ge2},
                          {"stabilizer_order", lv.report.stabilizer_order},
                          {"expected_order", lv.report.expected_order},
                          {"orbit_size", lv.report.orbit_size},
                          {"zero_set", roots_json(datum, lv.report.zero_set)},
                          {"doubling_agrees", lv.report.doubling_agrees}});
    }
    return {{"torsion", torsion_json(r.torsion, p)},
            {"pi1_G", r.pi1_G.get_str()},
            {"pi1_H", r.pi1_H.get_str()},
            {"pi1_divisibility", r.pi1_divisibility},
            {"pi1_G_divisible", r.pi1_G_divisible},
            {"tower", tower_json(datum, r.tower)},
            {"ge_status", r.ge_status},
            {"levels", levels},
            {"condition1", "out_of_scope"},
            {"passes", r.passes}};
}

Json weil_json(const HeisenbergRep& rep, const WeilExtension& ext, const WeilCheck& check, const FiniteGroup& group) {
    Json gens = Json::array();
    for (const auto& g : ext.generators) gens.push_back(g);
    Json chars = Json::array();
    for (const auto& cls : group.classes()) {
        auto s = cls.front();
        chars.push_back({{"class_rep", ext.elements[s]}, {"size", cls.size()}, {"value", to_json(ext.omega[s].trace())}});
    }
    return {{"p", rep.p()},
            {"dim_w", rep.space().dim()},
            {"dim_tau", rep.dim()},
            {"generators", gens},
            {"group_order", ext.elements.size()},
            {"level", ext.level},
            {"candidates", ext.candidates},
            {"det_one", ext.det_one},
            {"ambiguous", ext.ambiguous},
            {"canonical_lift_stand_in", ext.canonical_lift_stand_in},
            {"checks",
             {{"covariance", {{"checked", check.covariance_checked}, {"failures", check.covariance_failures}}},
              {"homomorphism",
               {{"checked", check.homomorphism_checked},
                {"failures", check.homomorphism_failures},
                {"all_pairs", check.all_pairs}}},
              {"support", {{"checked", check.support_checked}, {"failures", check.support_failures}}},
              {"nonvanishing", {{"checked", check.nonvanishing_checked}, {"failures", check.nonvanishing_failures}}}}},
            {"character", chars},
            {"pass", check.pass()}};
}

Json intertwining_json(const IntertwiningReport& r) {
    return {{"p", r.p},
            {"dim_w", r.dim_w},
            {"dim_w0", r.dim_w0},
            {"dim_w_star", r.dim_star},
            {"dim_v_star", r.dim_v_star},
            {"dim_v_tau", r.dim_v_tau},
            {"dim_v_gtau", r.dim_v_gtau},
            {"dim_v_tau0", r.dim_v_tau0},
            {"hom_dim", r.hom_dim},
            {"multiplicity_tau_K", to_json(r.mult_tau_k)},
            {"multiplicity_gtau_K", to_json(r.mult_gtau_k)},
            {"multiplicity_tau_H0", to_json(r.mult_tau_h0)},
            {"intertwines", r.intertwines},
            {"acts_by_c", r.acts_by_c},
            {"rank_matches", r.rank_matches},
            {"scaling", r.scaling},
            {"equivariance", {{"checked", r.equivariance_checked}, {"failures", r.equivariance_failures}}},
            {"operator", to_json(r.op)},
            {"pass", r.pass()}};
}

Json distinction_json(const TheoremReport& r) {
    Json orbits = Json::array();
    for (const auto& t : r.terms)
        orbits.push_back({{"theta", {{"t", t.rep.t}, {"outer", t.rep.outer}}},
                          {"l_orbit_size", t.l_orbit_size},
                          {"l_fixed_order", t.l_fixed_order},
                          {"stabilizer_order", t.stabilizer_order},
                          {"m_L", to_json(t.m_l)},
                          {"pairing", to_json(t.pairing)},
                          {"selected", t.selected}});
    return {{"q", r.q},
            {"theta_orbit_id", r.orbit_id},
            {"theta_orbit_size", r.orbit_size},
            {"fixed_order", r.fixed_order},
            {"rho_param", r.rho_param},
            {"lhs", to_json(r.lhs)},
            {"rhs", to_json(r.rhs)},
            {"orbits", orbits}};
}

namespace {

template <class Rep>
std::string csv_rows(const std::vector<std::vector<std::uint32_t>>& classes, const std::vector<Cyclotomic>& values,
                     Rep rep) {
    std::ostringstream out;
    out << "class,representative,size,level,coeffs\n";
    for (size_t c = 0; c < classes.size(); ++c) {
        const auto& v = values[classes[c].front()];
        out << c << "," << rep(classes[c].front()) << "," << classes[c].size() << "," << v.level() << ",";
        for (size_t i = 0; i < v.coeffs().size(); ++i) out << (i ? " " : "") << to_string(v.coeffs()[i]);
        out << "\n";
    }
    return out.str();
}

}  // namespace

std::string character_csv(const FiniteGroup& group, const std::vector<Cyclotomic>& values) {
    return csv_rows(group.classes(), values, [](std::uint32_t x) { return std::to_string(x); });
}

std::string character_csv(const MatrixGroup& group, const std::vector<Cyclotomic>& values) {
    return csv_rows(group.classes(), values, [&](std::uint32_t x) {
        std::string s;
        for (auto e : group.element(x)) s += (s.empty() ? "" : " ") + std::to_string(e);
        return s;
    });
}

}  // namespace tameforge
