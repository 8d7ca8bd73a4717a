#include "tameforge/depth.hpp"

#include <algorithm>
#include <set>

namespace tameforge {

namespace {

[[noreturn]] void invalid(const std::string& message, Error::Details details = {}) {
    throw Error("InvalidCharacterData", message, std::move(details));
}

RootSet union_of(const CharacterData& data, const RootSet& base, const Q& below) {
    std::vector<bool> in(data.action->datum().size(), false);
    for (auto r : base) in[r] = true;
    for (size_t k = 0; k < data.orbits.pairs.size(); ++k)
        if (data.pair_depths[k] < below)
            for (auto r : data.orbits.pairs[k]) in[r] = true;
    RootSet out;
    for (size_t r = 0; r < in.size(); ++r)
        if (in[r]) out.push_back(static_cast<std::uint32_t>(r));
    return out;
}

bool pair_inside(const CharacterData& data, size_t k, const RootSet& set) {
    return std::includes(set.begin(), set.end(), data.orbits.pairs[k].begin(), data.orbits.pairs[k].end());
}

void check_level(const CharacterData& data, const RootSet& phi, size_t i) {
    if (!is_levi_subsystem(data.action->datum(), phi))
        throw Error("NotLeviClosed", "Phi^" + std::to_string(i) + " is not a Levi subsystem",
                    {{"level", std::to_string(i)}});
    if (!is_galois_stable(*data.action, phi))
        throw Error("NotGaloisStable", "Phi^" + std::to_string(i) + " is not Gamma-stable",
                    {{"level", std::to_string(i)}});
}

}  // namespace

void validate(const CharacterData& data) {
    if (!data.action) invalid("missing Galois action");
    const RootDatum& datum = data.action->datum();
    if (data.pair_depths.size() != data.orbits.pairs.size())
        invalid("every orbit-pair needs exactly one depth",
                {{"pairs", std::to_string(data.orbits.pairs.size())},
                 {"depths", std::to_string(data.pair_depths.size())}});
    std::int64_t e = data.action->ramification_index();
    for (size_t k = 0; k < data.pair_depths.size(); ++k) {
        const Q& r = data.pair_depths[k];
        if (r < 0) invalid("negative depth", {{"pair", std::to_string(k)}});
        if (!on_depth_grid(r, e))
            invalid("depth " + to_string(r) + " is not in (1/e)Z", {{"pair", std::to_string(k)}, {"e", std::to_string(e)}});
        if (r > data.rho_depth)
            invalid("rho_depth is below an orbit depth", {{"pair", std::to_string(k)}, {"depth", to_string(r)}});
    }
    if (!on_depth_grid(data.rho_depth, e)) invalid("rho_depth is not in (1/e)Z");
    if (!std::is_sorted(data.levi_H.begin(), data.levi_H.end()) ||
        std::adjacent_find(data.levi_H.begin(), data.levi_H.end()) != data.levi_H.end())
        invalid("levi_H must be a sorted set of root indices");
    for (auto r : data.levi_H)
        if (r >= datum.size()) invalid("levi_H root index out of range");
    if (!is_levi_subsystem(datum, data.levi_H)) throw Error("NotLeviClosed", "Phi(H,T) is not a Levi subsystem", {{"level", "0"}});
    if (!is_galois_stable(*data.action, data.levi_H))
        throw Error("NotGaloisStable", "Phi(H,T) is not Gamma-stable", {{"level", "0"}});
    for (size_t k = 0; k < data.orbits.pairs.size(); ++k) {
        bool inside = pair_inside(data, k, data.levi_H);
        if (inside && data.pair_depths[k] != 0)
            invalid("orbit-pairs inside Phi(H,T) must carry depth 0", {{"pair", std::to_string(k)}});
        if (!inside && data.pair_depths[k] == 0)
            invalid("orbit-pairs outside Phi(H,T) must have positive depth", {{"pair", std::to_string(k)}});
    }
    for (const auto& res : data.residues) {
        if (res.root >= datum.size()) invalid("residue root out of range");
        if (res.value == 0) throw Error("ZeroValue", "residue values must be nonzero");
    }
}

LeviTower recover_tower_direct(const CharacterData& data) {
    validate(data);
    const RootDatum& datum = data.action->datum();
    std::set<Q> distinct;
    for (size_t k = 0; k < data.orbits.pairs.size(); ++k)
        if (!pair_inside(data, k, data.levi_H)) distinct.insert(data.pair_depths[k]);
    LeviTower t;
    t.d = distinct.size();
    for (const auto& r : distinct) {
        t.depths.push_back(r);
        t.subsystems.push_back(union_of(data, data.levi_H, r));
    }
    t.depths.push_back(data.rho_depth);
    t.subsystems.push_back(datum.all_roots());
    for (size_t i = 0; i <= t.d; ++i) check_level(data, t.subsystems[i], i);
    return t;
}

LeviTower recover_tower_recursive(const CharacterData& data) {
    validate(data);
    const RootDatum& datum = data.action->datum();
    std::vector<RootSet> subs{datum.all_roots()};
    std::vector<Q> depths{data.rho_depth};
    while (subs.back() != data.levi_H) {
        const RootSet& cur = subs.back();
        // depth of phi on the derived part of the current level, outside H
        Q r = 0;
        bool any = false;
        for (size_t k = 0; k < data.orbits.pairs.size(); ++k)
            if (pair_inside(data, k, cur) && !pair_inside(data, k, data.levi_H)) {
                if (!any || data.pair_depths[k] > r) r = data.pair_depths[k];
                any = true;
            }
        ensure(any, "recursion reached a level without jumping orbits");
        depths.push_back(r);
        subs.push_back(union_of(data, data.levi_H, r));
        ensure(subs.back().size() < cur.size(), "recursion did not shrink the subsystem");
    }
    LeviTower t;
    t.d = subs.size() - 1;
    // depths holds r_d, r_{d-1}, ..., r_0 ; subs holds Phi^d, ..., Phi^0
    std::reverse(subs.begin(), subs.end());
    t.subsystems = subs;
    t.depths.assign(depths.rbegin(), depths.rend() - 1);
    t.depths.push_back(data.rho_depth);
    for (size_t i = 0; i <= t.d; ++i) check_level(data, t.subsystems[i], i);
    return t;
}

LeviTower recover_tower(const CharacterData& data) {
    LeviTower direct = recover_tower_direct(data);
    LeviTower recursive = recover_tower_recursive(data);
    ensure(direct == recursive, "direct and recursive tower constructions disagree");
    check_tower_invariants(data, direct);
    return direct;
}

void check_tower_invariants(const CharacterData& data, const LeviTower& t) {
    ensure(t.depths.size() == t.d + 1 && t.subsystems.size() == t.d + 1, "tower length mismatch");
    ensure(t.subsystems.front() == data.levi_H, "Phi^0 differs from Phi(H,T)");
    ensure(t.subsystems.back() == data.action->datum().all_roots(), "Phi^d differs from Phi");
    for (size_t i = 0; i + 1 < t.subsystems.size(); ++i) {
        const auto& a = t.subsystems[i];
        const auto& b = t.subsystems[i + 1];
        ensure(std::includes(b.begin(), b.end(), a.begin(), a.end()) && a.size() < b.size(),
               "subsystems are not strictly nested at level " + std::to_string(i));
    }
    for (size_t i = 0; i + 1 < t.d; ++i) ensure(t.depths[i] < t.depths[i + 1], "jumps are not increasing");
    if (t.d > 0) {
        ensure(t.depths[0] >= 0, "r_0 is negative");
        ensure(t.depths[t.d - 1] <= t.depths[t.d], "r_{d-1} exceeds r_d");
    }
}

}  // namespace tameforge
