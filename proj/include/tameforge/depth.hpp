#pragma once

#include "tameforge/galois.hpp"

#include <memory>
#include <optional>

namespace tameforge {

struct ResidueEntry {
    std::uint32_t root = 0;           // root a whose coroot H_a carries the value
    FiniteField::Elem value = 0;
    std::int64_t p = 0;
    int m = 1;
};

/// Depth data per orbit-pair, the depth of rho, the subsystem Phi(H,T),
/// and optional residue values.
struct CharacterData {
    std::shared_ptr<const GaloisAction> action;
    OrbitSet orbits;
    std::vector<Q> pair_depths;       // indexed like orbits.pairs
    Q rho_depth;
    RootSet levi_H;
    std::vector<ResidueEntry> residues;
};

/// Checks the CharacterData invariants; throws Error("InvalidCharacterData").
void validate(const CharacterData& data);

struct LeviTower {
    size_t d = 0;
    std::vector<Q> depths;            // r_0 .. r_d
    std::vector<RootSet> subsystems;  // Phi^0 .. Phi^d

    /// r_0 .. r_{d-1}
    std::vector<Q> jumps() const { return {depths.begin(), depths.begin() + static_cast<std::ptrdiff_t>(d)}; }
    bool operator==(const LeviTower& o) const {
        return d == o.d && depths == o.depths && subsystems == o.subsystems;
    }
};

/// Jumps read off directly from the distinct positive depths.
LeviTower recover_tower_direct(const CharacterData& data);
/// Top-down recursion from Phi^d = Phi.
LeviTower recover_tower_recursive(const CharacterData& data);
/// Direct construction, checked against the recursion.
LeviTower recover_tower(const CharacterData& data);

/// Throws if the tower violates any of its type invariants.
void check_tower_invariants(const CharacterData& data, const LeviTower& tower);

}  // namespace tameforge
