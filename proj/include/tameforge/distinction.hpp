#pragma once

#include "tameforge/matrix_group.hpp"
#include "tameforge/rational.hpp"

namespace tameforge {

/// theta(g) = t g t^{-1} (inner) or t g^{-T} t^{-1} (outer). t need not lie in G.
struct Involution {
    FMat t;
    bool outer = false;
};

FMat apply_involution(const MatrixGroup& g, const Involution& theta, const FMat& x);
/// Differential on gl_n: X -> t X t^{-1} or -t X^T t^{-1}.
FMat lie_involution(const MatrixGroup& g, const Involution& theta, const FMat& x);
/// Int(h) o theta o Int(h)^{-1}.
Involution act(const MatrixGroup& g, const FMat& h, const Involution& theta);
/// Images of the group generators; equal keys mean equal automorphisms.
std::vector<FMat> involution_key(const MatrixGroup& g, const Involution& theta);
/// Throws NotAnInvolution unless theta preserves G, squares to the identity and is nontrivial.
void validate_involution(const MatrixGroup& g, const Involution& theta);

/// Inner t in G with t^2 central and t non-central; outer t in G with t^T = +-t.
std::vector<Involution> default_seeds(const MatrixGroup& g);

struct InvolutionOrbit {
    std::vector<Involution> members;  // one per distinct automorphism, first is the seed
};

std::vector<InvolutionOrbit> involution_orbits(const MatrixGroup& g, const std::vector<Involution>& seeds);

std::vector<std::uint32_t> fixed_points(const MatrixGroup& g, const Involution& theta);
std::vector<std::uint32_t> stabilizer(const MatrixGroup& g, const Involution& theta);

/// GL_2(F_q) with an elliptic torus L = <C>, C the companion matrix of a
/// generator of F_{q^2}^x; L[j] = index of C^j.
struct Gl2Data {
    std::int64_t q = 0;
    MatrixGroup group;
    std::vector<std::uint32_t> torus;
    std::vector<std::int64_t> torus_exponent;  // per group element: j with element = C^j, or -1

    std::int64_t torus_order() const { return static_cast<std::int64_t>(torus.size()); }
};

Gl2Data build_gl2(std::int64_t q, size_t bound = kDefaultElementBound);

/// One parameter k per pair {k, qk} with k != qk mod q^2-1, smallest first.
std::vector<std::int64_t> cuspidal_parameters(std::int64_t q);
/// Per-element values of the cuspidal character attached to rho_k(C^j) = zeta^{kj}.
std::vector<Cyclotomic> cuspidal_character(const Gl2Data& d, std::int64_t k);
Cyclotomic torus_character(const Gl2Data& d, std::int64_t k, std::uint32_t element);

/// det(Ad(h) | g^theta) in {+1, -1} for each h in L^theta (indices into G).
std::vector<int> epsilon_character(const MatrixGroup& g, const Involution& theta, const std::vector<std::uint32_t>& l_fixed);

/// (1/|G^theta|) sum over G^theta of a per-element character.
Q invariant_dimension(const MatrixGroup& g, const Involution& theta, const std::vector<Cyclotomic>& chi);

struct LOrbitTerm {
    Involution rep;
    size_t l_orbit_size = 0;
    size_t l_fixed_order = 0;
    size_t stabilizer_order = 0;
    Q m_l;
    Q pairing;
    bool selected = false;
};

struct TheoremReport {
    std::int64_t q = 0;
    size_t orbit_id = 0;
    size_t orbit_size = 0;
    std::int64_t rho_param = 0;
    size_t fixed_order = 0;
    Q lhs, rhs;
    std::vector<LOrbitTerm> terms;

    bool equal() const { return lhs == rhs; }
};

/// Both sides for one orbit and one torus character. `inject` adds 1 to the
/// right side. Throws TheoremViolation when they differ.
TheoremReport theorem_sides(const Gl2Data& d, const InvolutionOrbit& orbit, size_t orbit_id, std::int64_t k,
                            bool inject = false);

/// Every cuspidal parameter against every orbit of the default seeds.
std::vector<TheoremReport> run_distinction(std::int64_t q, bool inject = false, size_t bound = kDefaultElementBound);

/// (1/|K|) sum_{h in G} chi(h g h^{-1}) with chi given on K (sorted indices), zero elsewhere.
std::vector<Cyclotomic> frobenius_induce(const FiniteGroup& g, const std::vector<std::uint32_t>& k,
                                         const std::vector<Cyclotomic>& chi_on_k);
/// Same with chi given per element of G; throws SupportNotInK if it is nonzero off K.
std::vector<Cyclotomic> frobenius_induce_extended(const FiniteGroup& g, const std::vector<std::uint32_t>& k,
                                                  const std::vector<Cyclotomic>& chi);

}  // namespace tameforge
