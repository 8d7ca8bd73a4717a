#pragma once

#include "tameforge/depth.hpp"

namespace tameforge {

/// Residue of a dual-coset functional, in X*(T) (x) F_{p^m} coordinates.
struct ResidueFunctional {
    FieldPtr field;
    std::vector<FiniteField::Elem> coords;
    Q depth;
};

/// X~(H_a) = sum_i x_i a^vee_i
FiniteField::Elem evaluate_on_coroot(const RootDatum& datum, const ResidueFunctional& f, std::uint32_t root);

struct AssembledFunctional {
    ResidueFunctional functional;
    /// Values on every coroot of Phi^{i+1}, in root order.
    std::vector<std::pair<std::uint32_t, FiniteField::Elem>> values;
    size_t free_dimension = 0;  // free variables, set to zero
};

using Prescription = std::vector<std::pair<std::uint32_t, FiniteField::Elem>>;

/// Solves for a functional vanishing on the coroots of phi_i and taking the
/// prescribed values. If `orbits` is given, every orbit-pair of
/// phi_ip1 - phi_i must contain a prescribed root.
AssembledFunctional assemble_residue_functional(const RootDatum& datum, const RootSet& phi_i, const RootSet& phi_ip1,
                                                const Prescription& prescribed, const FieldPtr& field, const Q& depth,
                                                const OrbitSet* orbits = nullptr);

struct GeReport {
    bool ge1 = false;
    bool ge2 = false;
    std::uint64_t stabilizer_order = 0;
    std::uint64_t expected_order = 0;
    std::uint64_t orbit_size = 0;
    RootSet zero_set;             // roots of phi_ip1 on which X~ vanishes
    bool doubling_agrees = false; // same stabilizer over F_{p^{2m}}
};

GeReport ge_check(const RootDatum& datum, const RootSet& phi_i, const RootSet& phi_ip1, const ResidueFunctional& f,
                  bool doubling_check = true);

struct LevelGenericity {
    size_t level = 0;
    AssembledFunctional functional;
    GeReport report;
};

struct PermissibilityReport {
    TorsionReport torsion;
    Z pi1_G, pi1_H;
    bool pi1_divisibility = false;  // p | |pi_1(H_der)|
    bool pi1_G_divisible = false;   // p | |pi_1(G_der)|, z-extension case (flagged only)
    LeviTower tower;
    std::string ge_status;          // "checked", "not_required", "trivial"
    std::vector<LevelGenericity> levels;
    bool passes = true;
};

PermissibilityReport permissibility_report(const CharacterData& data, std::int64_t p, int m,
                                           bool require_ge = false);

}  // namespace tameforge
