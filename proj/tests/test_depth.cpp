#include "doctest.h"

#include "tameforge/depth.hpp"
#include "tameforge/errors.hpp"
#include "tameforge/genericity.hpp"

#include <functional>
#include <random>

using namespace tameforge;

namespace {

IMat negation(int n) {
    IMat m(n, IVec(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = -1;
    return m;
}

std::uint32_t idx(const RootDatum& d, const IVec& v) {
    auto i = d.find_root(v);
    REQUIRE(i >= 0);
    return static_cast<std::uint32_t>(i);
}

RootSet sorted(RootSet s) {
    std::sort(s.begin(), s.end());
    return s;
}

CharacterData make_data(RootDatum datum, std::vector<IMat> gens, std::int64_t e,
                        const std::function<Q(const RootSet&)>& depth_of_pair, Q rho, RootSet levi = {}) {
    CharacterData data;
    data.action = std::make_shared<const GaloisAction>(std::make_shared<const RootDatum>(std::move(datum)),
                                                       std::move(gens), e);
    data.orbits = compute_orbits(*data.action);
    for (const auto& pair : data.orbits.pairs) data.pair_depths.push_back(depth_of_pair(pair));
    data.rho_depth = rho;
    data.levi_H = std::move(levi);
    return data;
}

std::string error_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

// Unions of orbit-pairs that are Gamma-stable Levi subsystems.
std::vector<std::vector<size_t>> levi_pair_sets(const CharacterData& data) {
    std::vector<std::vector<size_t>> out;
    size_t k = data.orbits.pairs.size();
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        RootSet s;
        std::vector<size_t> members;
        for (size_t j = 0; j < k; ++j)
            if (mask >> j & 1) {
                members.push_back(j);
                s.insert(s.end(), data.orbits.pairs[j].begin(), data.orbits.pairs[j].end());
            }
        std::sort(s.begin(), s.end());
        if (is_levi_subsystem(data.action->datum(), s) && is_galois_stable(*data.action, s)) out.push_back(members);
    }
    return out;
}

}  // namespace

TEST_CASE("two-step tower on A1xA1") {
    auto d = direct_sum(sl_datum(2), sl_datum(2));
    auto a = idx(d, {2, 0});
    auto data = make_data(d, {negation(2)}, 2,
                          [&](const RootSet& pair) { return pair[0] == std::min(a, d.negative(a)) ? Q(1, 2) : Q(3, 2); },
                          Q(3, 2));
    auto t = recover_tower(data);
    CHECK(t.d == 2);
    CHECK(t.depths == std::vector<Q>{Q(1, 2), Q(3, 2), Q(3, 2)});
    CHECK(t.jumps() == std::vector<Q>{Q(1, 2), Q(3, 2)});
    REQUIRE(t.subsystems.size() == 3);
    CHECK(t.subsystems[0].empty());
    CHECK(t.subsystems[1] == sorted({a, d.negative(a)}));
    CHECK(t.subsystems[2] == d.all_roots());
    CHECK(recover_tower_recursive(data) == recover_tower_direct(data));
}

TEST_CASE("all depths zero gives d = 0") {
    auto d = sl_datum(3);
    auto data = make_data(d, {}, 1, [](const RootSet&) { return Q(0); }, Q(0), d.all_roots());
    auto t = recover_tower(data);
    CHECK(t.d == 0);
    CHECK(t.depths == std::vector<Q>{Q(0)});
    CHECK(t.subsystems == std::vector<RootSet>{d.all_roots()});
    auto rep = permissibility_report(data, 5, 1);
    CHECK(rep.ge_status == "trivial");
    CHECK(rep.passes);
}

TEST_CASE("single jump under the Coxeter rotation") {
    auto data = make_data(sl_datum(3), {{{-1, -1}, {1, 0}}}, 1, [](const RootSet&) { return Q(1); }, Q(1));
    auto t = recover_tower(data);
    CHECK(t.d == 1);
    CHECK(t.depths == std::vector<Q>{Q(1), Q(1)});
    CHECK(t.subsystems[0].empty());
    CHECK(t.subsystems[1].size() == 6);
}

TEST_CASE("invalid character data") {
    auto d = sl_datum(3);
    auto a1 = idx(d, {2, -1}), a2 = idx(d, {-1, 2});
    auto pair_min = [&](std::uint32_t r) { return std::min(r, d.negative(r)); };
    auto by_root = [&](Q x, Q y, Q z) {
        return [=](const RootSet& pair) {
            if (pair[0] == pair_min(a1)) return x;
            if (pair[0] == pair_min(a2)) return y;
            return z;
        };
    };
    // {±a1, ±a2} below depth 2 is not Q-closed
    auto bad = make_data(d, {}, 1, by_root(Q(1), Q(1), Q(2)), Q(2));
    CHECK(error_code([&] { recover_tower_direct(bad); }) == "NotLeviClosed");
    CHECK(error_code([&] { recover_tower_recursive(bad); }) == "NotLeviClosed");

    CHECK(error_code([&] { recover_tower(make_data(d, {}, 1, by_root(Q(1, 2), Q(1), Q(1)), Q(1))); }) ==
          "InvalidCharacterData");
    CHECK(error_code([&] { recover_tower(make_data(d, {}, 2, by_root(Q(1), Q(1), Q(3)), Q(2))); }) ==
          "InvalidCharacterData");
    CHECK(error_code([&] { recover_tower(make_data(d, {}, 1, by_root(Q(0), Q(1), Q(1)), Q(1))); }) ==
          "InvalidCharacterData");
    CHECK(error_code([&] { recover_tower(make_data(d, {}, 1, by_root(Q(-1), Q(1), Q(1)), Q(1))); }) ==
          "InvalidCharacterData");
    // a pair inside Phi(H,T) must have depth 0
    auto inside = make_data(d, {}, 1, by_root(Q(1), Q(2), Q(2)), Q(2), sorted({a1, d.negative(a1)}));
    CHECK(error_code([&] { recover_tower(inside); }) == "InvalidCharacterData");
    // levi_H not Gamma-stable under the rotation
    auto rot = make_data(d, {{{-1, -1}, {1, 0}}}, 1, [](const RootSet&) { return Q(0); }, Q(1),
                         sorted({a1, d.negative(a1)}));
    CHECK(error_code([&] { recover_tower(rot); }) != "");
    auto zero_res = make_data(d, {}, 1, by_root(Q(1), Q(1), Q(1)), Q(1));
    zero_res.residues.push_back({a1, 0, 5, 1});
    CHECK(error_code([&] { validate(zero_res); }) == "ZeroValue");
}

TEST_CASE("direct and recursive towers agree on random depth data") {
    struct Setup {
        RootDatum d;
        std::vector<std::vector<IMat>> actions;
    };
    std::vector<Setup> setups = {
        {direct_sum(sl_datum(2), sl_datum(2)), {{}, {negation(2)}, {{{0, 1}, {1, 0}}}}},
        {sl_datum(3), {{}, {negation(2)}, {{{0, 1}, {1, 0}}}, {{{-1, -1}, {1, 0}}}}},
        {sl_datum(4), {{}, {negation(3)}, {{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}}}},
        {gl_datum(3), {{}, {{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}}}},
    };
    std::mt19937_64 rng(2024);
    const std::vector<Q> grid = {Q(1, 2), Q(1), Q(3, 2), Q(2), Q(5, 2)};
    size_t towers = 0, rejected = 0;
    for (const auto& s : setups)
        for (const auto& gens : s.actions) {
            auto probe = make_data(s.d, gens, 2, [](const RootSet&) { return Q(1); }, Q(3));
            auto levis = levi_pair_sets(probe);
            for (int trial = 0; trial < 60; ++trial) {
                const auto& members = levis[rng() % levis.size()];
                std::vector<bool> in_levi(probe.orbits.pairs.size(), false);
                for (auto j : members) in_levi[j] = true;
                std::vector<Q> depths(probe.orbits.pairs.size());
                for (size_t j = 0; j < depths.size(); ++j) depths[j] = in_levi[j] ? Q(0) : grid[rng() % grid.size()];
                RootSet levi;
                for (auto j : members) levi.insert(levi.end(), probe.orbits.pairs[j].begin(), probe.orbits.pairs[j].end());
                std::sort(levi.begin(), levi.end());
                CharacterData data = probe;
                data.pair_depths = depths;
                data.levi_H = levi;
                data.rho_depth = grid.back() + Q(rng() % 2);
                std::string direct_err, rec_err;
                LeviTower a, b;
                direct_err = error_code([&] { a = recover_tower_direct(data); });
                rec_err = error_code([&] { b = recover_tower_recursive(data); });
                CHECK(direct_err == rec_err);
                if (!direct_err.empty()) {
                    CHECK(direct_err == "NotLeviClosed");
                    ++rejected;
                    continue;
                }
                CHECK(a == b);
                check_tower_invariants(data, a);
                ++towers;
                // nesting and monotone depths
                for (size_t i = 0; i + 1 < a.d; ++i) CHECK(a.depths[i] < a.depths[i + 1]);
                for (size_t i = 0; i < a.d; ++i) {
                    CHECK(a.subsystems[i].size() < a.subsystems[i + 1].size());
                    CHECK(std::includes(a.subsystems[i + 1].begin(), a.subsystems[i + 1].end(),
                                        a.subsystems[i].begin(), a.subsystems[i].end()));
                }
                if (a.d > 0) CHECK(a.depths[a.d - 1] <= a.depths[a.d]);
                CHECK(a.subsystems.front() == levi);
                // determinism
                CHECK(recover_tower(data) == a);
            }
        }
    CHECK(towers > 100);
    CHECK(rejected > 0);
}

TEST_CASE("permissibility reports") {
    // GL2: simply connected derived group
    auto gl2 = make_data(gl_datum(2), {}, 1, [](const RootSet&) { return Q(1); }, Q(1));
    auto rep = permissibility_report(gl2, 5, 1);
    CHECK_FALSE(rep.pi1_divisibility);
    CHECK_FALSE(rep.torsion.condition4_required);
    CHECK(rep.ge_status == "not_required");
    CHECK(rep.tower.d == 1);

    // SL3 at p = 3 needs residues
    auto d = sl_datum(3);
    auto a1 = idx(d, {2, -1}), a2 = idx(d, {-1, 2});
    auto sl3 = make_data(d, {}, 1, [](const RootSet&) { return Q(1); }, Q(1));
    CHECK(error_code([&] { permissibility_report(sl3, 3, 1); }) == "MissingResidueData");
    sl3.residues = {{a1, 1, 3, 1}, {a2, 1, 3, 1}, {idx(d, {1, 1}), 2, 3, 1}};
    auto r3 = permissibility_report(sl3, 3, 1);
    CHECK(r3.torsion.condition4_required);
    CHECK(r3.ge_status == "checked");
    REQUIRE(r3.levels.size() == 1);
    // over F_3 every GE1 residue is proportional to (1,1), which the Coxeter element fixes
    CHECK(r3.levels[0].report.ge1);
    CHECK_FALSE(r3.levels[0].report.ge2);
    CHECK(r3.levels[0].report.stabilizer_order == 3);
    CHECK_FALSE(r3.passes);
    // over F_9 a residue off that line is generic
    auto f9 = get_field(3, 2);
    auto g = f9->generator();
    sl3.residues = {{a1, 1, 3, 2}, {a2, g, 3, 2}, {idx(d, {1, 1}), f9->add(1, g), 3, 2}};
    auto r9 = permissibility_report(sl3, 3, 1);
    CHECK(r9.levels[0].report.ge1);
    CHECK(r9.levels[0].report.ge2);
    CHECK(r9.passes);

    // X(H_{a1+a2}) = 1 + (-1) = 0 over F_3: GE1 fails
    auto sl3b = make_data(d, {}, 1, [](const RootSet&) { return Q(1); }, Q(1));
    sl3b.residues = {{a1, 1, 3, 1}, {a2, 2, 3, 1}};
    CHECK(error_code([&] { permissibility_report(sl3b, 3, 1); }) == "MissingResidueData");
    sl3b.residues.push_back({idx(d, {-1, -1}), 0 + 1, 3, 1});
    CHECK(error_code([&] { permissibility_report(sl3b, 3, 1); }) == "InconsistentPrescription");

    // residue field mismatch
    auto sl3c = sl3;
    for (auto& r : sl3c.residues) r.p = 5;
    CHECK(error_code([&] { permissibility_report(sl3c, 3, 1); }) == "FieldMismatch");

    // PGL2 at p = 2 is excluded, PGL3 at p = 3 has p | pi_1
    auto pgl3 = make_data(pgl_datum(3), {}, 1, [](const RootSet&) { return Q(0); }, Q(0), pgl_datum(3).all_roots());
    auto rp = permissibility_report(pgl3, 3, 1);
    CHECK(rp.pi1_divisibility);
    CHECK(rp.pi1_G_divisible);
    CHECK(error_code([&] { permissibility_report(pgl3, 2, 1); }) == "EvenPrime");
}
