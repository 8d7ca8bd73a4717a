#pragma once

#include "tameforge/finite_group.hpp"
#include "tameforge/rootdata.hpp"

#include <memory>

namespace tameforge {

/// Finite group acting on X* by integer matrices x -> M x (and on X_* by
/// the contragredient), permuting roots compatibly with coroots.
class GaloisAction {
public:
    GaloisAction(std::shared_ptr<const RootDatum> datum, std::vector<IMat> generators,
                 std::int64_t ramification_index = 1, size_t bound = kDefaultElementBound);

    const RootDatum& datum() const { return *datum_; }
    std::shared_ptr<const RootDatum> datum_ptr() const { return datum_; }
    const std::vector<IMat>& generators() const { return gens_; }
    /// Contragredient matrices (M^{-1})^T acting on X_*.
    const std::vector<IMat>& coroot_generators() const { return cogens_; }
    /// Root permutations of the generators.
    const std::vector<std::vector<std::uint32_t>>& generator_perms() const { return perms_; }
    const std::vector<IMat>& elements() const { return elements_; }
    std::int64_t ramification_index() const { return e_; }

private:
    std::shared_ptr<const RootDatum> datum_;
    std::vector<IMat> gens_, cogens_;
    std::vector<std::vector<std::uint32_t>> perms_;
    std::vector<IMat> elements_;
    std::int64_t e_;
};

/// Gamma-orbits on roots, and orbit-pairs {O, -O}.
struct OrbitSet {
    std::vector<RootSet> orbits;            // sorted by smallest member
    std::vector<std::uint32_t> orbit_of;    // root -> orbit
    std::vector<std::uint32_t> pair_map;    // orbit O -> orbit of -O
    std::vector<RootSet> pairs;             // O union -O, sorted by smallest member
    std::vector<std::uint32_t> pair_of;     // root -> pair
};

OrbitSet compute_orbits(const GaloisAction& action);

bool is_galois_stable(const GaloisAction& action, const RootSet& subset);

struct EllipticityReport {
    bool T_elliptic_in_G = false;
    bool ZH_mod_ZG_anisotropic = false;
    size_t coroot_invariant_dim = 0;
    size_t annihilator_invariant_dim = 0;
};

EllipticityReport ellipticity_report(const GaloisAction& action, const RootSet& levi);

/// True iff r lies in (1/e)Z.
bool on_depth_grid(const Q& r, std::int64_t e);

}  // namespace tameforge
