#pragma once

#include "tameforge/finite_field.hpp"
#include "tameforge/intmatrix.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tameforge {

using RootSet = std::vector<std::uint32_t>;  // sorted root indices

/// Root datum in fixed coordinates: X* and X_* are Z^rank with the dot
/// product as pairing; root i pairs with coroot i. Validated on construction.
class RootDatum {
public:
    RootDatum() = default;
    RootDatum(int rank, IMat roots, IMat coroots);

    int rank() const { return rank_; }
    size_t size() const { return roots_.size(); }
    const IMat& roots() const { return roots_; }
    const IMat& coroots() const { return coroots_; }
    const IVec& root(size_t i) const { return roots_[i]; }
    const IVec& coroot(size_t i) const { return coroots_[i]; }

    /// <root i, coroot j>
    std::int64_t cartan(size_t i, size_t j) const;
    std::uint32_t negative(size_t i) const { return neg_[i]; }
    /// Index of a root vector, or -1.
    std::int64_t find_root(const IVec& v) const;
    /// Permutation of root indices induced by the reflection in root i.
    const std::vector<std::uint32_t>& reflection(size_t i) const { return refl_[i]; }
    RootSet all_roots() const;

private:
    int rank_ = 0;
    IMat roots_, coroots_;
    std::vector<std::uint32_t> neg_;
    std::vector<std::vector<std::uint32_t>> refl_;
    std::map<IVec, std::uint32_t> index_;
};

std::int64_t dot(const IVec& a, const IVec& b);

struct ComponentInfo {
    std::string type;          // e.g. "A2", "B3", "E6"
    int rank = 0;
    RootSet roots;             // roots of this irreducible component
    RootSet simple_roots;
    std::uint64_t weyl_order = 1;
};

struct ClassificationReport {
    std::vector<ComponentInfo> components;  // ordered by smallest root index
    std::uint64_t weyl_order = 1;
};

ClassificationReport classify_and_validate(const RootDatum& datum);
/// Classification of the subsystem spanned by `subset` (assumed closed).
ClassificationReport classify_subsystem(const RootDatum& datum, const RootSet& subset);
std::uint64_t weyl_group_order(const RootDatum& datum, const RootSet& subset);

/// Simple roots of a closed symmetric subset for a fixed regular functional.
RootSet simple_roots(const RootDatum& datum, const RootSet& subset);
/// Integer matrices x -> s_a(x) on X* for the simple roots of `subset`.
std::vector<IMat> simple_reflection_matrices(const RootDatum& datum, const RootSet& subset);

bool is_levi_subsystem(const RootDatum& datum, const RootSet& subset);

struct StabilizerReport {
    std::uint64_t orbit_size = 0;
    std::uint64_t stabilizer_order = 0;
    std::uint64_t weyl_order = 0;
};

/// Orbit-stabilizer for W(subset) acting on X* (x) F_{p^m}.
StabilizerReport weyl_stabilizer_order(const RootDatum& datum, const RootSet& subset,
                                       const std::vector<FiniteField::Elem>& point, const FieldPtr& field);

/// |(X_* cap Q Phi^vee) / Z Phi^vee| for the coroots of `subset` (all roots by default).
Z fundamental_group_order(const RootDatum& datum);
Z fundamental_group_order(const RootDatum& datum, const RootSet& subset);
/// Order of the torsion subgroup of X* / Z Phi.
Z character_quotient_torsion(const RootDatum& datum);

struct TorsionReport {
    bool condition4_required = false;
    std::string reason;
    Z quotient_torsion;  // |tors(X*/Z Phi)|
    std::vector<std::string> types;
};

TorsionReport torsion_report(const RootDatum& datum, std::int64_t p);

// Standard data.
IMat cartan_matrix(char family, int rank);
/// Simply connected datum (X* = weight lattice) with the given Cartan matrix.
RootDatum simply_connected_datum(const IMat& cartan);
/// Adjoint datum (X* = root lattice).
RootDatum adjoint_datum(const IMat& cartan);
RootDatum gl_datum(int n);
RootDatum sl_datum(int n);
RootDatum pgl_datum(int n);
RootDatum direct_sum(const RootDatum& a, const RootDatum& b);
/// Change coordinates by a unimodular u: roots -> u a, coroots -> u^{-T} a^vee.
RootDatum change_basis(const RootDatum& datum, const IMat& u);

}  // namespace tameforge
