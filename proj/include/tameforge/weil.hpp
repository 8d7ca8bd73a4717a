#pragma once

#include "tameforge/finite_group.hpp"
#include "tameforge/heisenberg.hpp"

#include <map>

namespace tameforge {

/// Extension of a Heisenberg representation to a finite symplectic group S,
/// omega(s) = zeta_N^{f(s)} A_s with A_s the normalized averaged intertwiner.
struct WeilExtension {
    std::vector<FpMat> generators;
    std::vector<FpMat> elements;  // identity first, breadth-first order
    std::map<FpMat, std::uint32_t> index;
    std::vector<std::vector<std::uint32_t>> right_mul;  // index of elements[s] * generators[g]
    std::int64_t level = 1;                             // N = lcm(2p, exponent of S)
    std::vector<std::int64_t> exponents;                // f(s) mod N
    std::vector<CycMatrix> omega;
    size_t candidates = 0;     // trivializations surviving the determinant filter
    bool det_one = true;       // every omega(s) has determinant one
    bool ambiguous = false;    // more than one candidate before the final tie-break
    bool canonical_lift_stand_in = false;  // tie-break applied in the (p, dim W) = (3, 2) case

    std::uint32_t index_of(const FpMat& s) const;
};

WeilExtension weil_extend(const HeisenbergRep& rep, const std::vector<FpMat>& generators,
                          size_t bound = kDefaultElementBound);

struct WeilCheck {
    size_t covariance_checked = 0, covariance_failures = 0;
    size_t homomorphism_checked = 0, homomorphism_failures = 0;
    size_t support_checked = 0, support_failures = 0;
    size_t nonvanishing_checked = 0, nonvanishing_failures = 0;
    bool all_pairs = false;

    bool pass() const {
        return covariance_failures == 0 && homomorphism_failures == 0 && support_failures == 0 &&
               nonvanishing_failures == 0;
    }
};

/// Exact covariance, multiplicativity and trace-support checks. Multiplicativity
/// runs over all pairs when |S| <= pair_limit, over generator edges otherwise.
WeilCheck verify_weil(const HeisenbergRep& rep, const WeilExtension& ext, size_t pair_limit = 64);

/// Same omega on the same set of elements.
bool same_extension(const WeilExtension& a, const WeilExtension& b);

/// M * T and T * M for a monomial T.
CycMatrix times_monomial(const CycMatrix& m, const MonomialMatrix& t);
CycMatrix monomial_times(const MonomialMatrix& t, const CycMatrix& m);

}  // namespace tameforge
