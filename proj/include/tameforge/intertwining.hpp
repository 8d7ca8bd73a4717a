#pragma once

#include "tameforge/heisenberg.hpp"
#include "tameforge/rational.hpp"

#include <cstdint>

namespace tameforge {

/// Common fixed vectors of a family of monomial operators. Basis vector c is
/// v_c = sum_{y in c} zeta^{phase[y]} e_y, normalized so v_c[roots[c]] = 1.
struct FixedSpace {
    std::int64_t level = 1;
    std::vector<std::uint32_t> roots;
    std::vector<std::int64_t> component;  // basis index of e_y's class, -1 if it carries no fixed vector
    std::vector<std::int64_t> phase;

    size_t dim() const { return roots.size(); }
    size_t ambient_dim() const { return component.size(); }
    /// Dense ambient_dim x dim inclusion.
    CycMatrix inclusion() const;
};

FixedSpace fixed_space(size_t dim, std::int64_t level, const std::vector<MonomialMatrix>& ops);
/// Operator preserving the fixed space, written in its basis. Throws NotInvariant otherwise.
MonomialMatrix restrict_to(const MonomialMatrix& op, const FixedSpace& fs);
/// Dense operator preserving the fixed space, written in its basis.
CycMatrix restrict_dense(const CycMatrix& op, const FixedSpace& fs);

/// Basis of {X : X B_i = A_i X for all i} for monomial A_i (rows) and B_i (columns).
std::vector<CycMatrix> monomial_hom_space(const std::vector<MonomialMatrix>& a, const std::vector<MonomialMatrix>& b,
                                          size_t rows, size_t cols, std::int64_t level);

/// W* = W13 + W0 + gW13 in standard coordinates: plus part [W1 | W2 | gW1],
/// minus part [W3 | W4 | gW3]. W = W1+W2+W3+W4, gW = W2+W4+gW1+gW3.
struct FiberedSum {
    std::int64_t p = 3;
    size_t k = 0;  // dim W1 = dim W3
    size_t m = 0;  // dim W2 = dim W4
    SymplecticSpace star = SymplecticSpace::standard(3, 1);

    size_t dim_w() const { return 2 * k + 2 * m; }
    size_t dim_w0() const { return 2 * m; }
    size_t dim_star() const { return star.dim(); }
    size_t half() const { return 2 * k + m; }
    FpVec plus(size_t i) const;
    FpVec minus(size_t i) const;
    std::vector<FpVec> w1() const;
    std::vector<FpVec> w0() const;
    std::vector<FpVec> gw1() const;
    /// Is w in W (resp. gW)?
    bool in_w(const FpVec& w) const;
    bool in_gw(const FpVec& w) const;
};

FiberedSum build_fibered_sum(std::int64_t p, size_t dim_w13, size_t dim_w0);

/// Representations tau*, tau, g tau, tau_0 of the fibered sum and the common
/// group K = (W1 + W0 + gW1) x mu_p acting on V_tau and V_gtau.
class FiberedSumModel {
public:
    explicit FiberedSumModel(FiberedSum data);

    const FiberedSum& data() const { return data_; }
    const HeisenbergRep& star_rep() const { return rep_; }
    const FixedSpace& v_tau() const { return v_tau_; }
    const FixedSpace& v_gtau() const { return v_gtau_; }
    const FixedSpace& v_tau0() const { return v_tau0_; }
    /// Generators of K (the last one central) and their restrictions.
    const std::vector<FpVec>& k_generators() const { return k_gens_; }
    const std::vector<MonomialMatrix>& on_tau() const { return on_tau_; }
    const std::vector<MonomialMatrix>& on_gtau() const { return on_gtau_; }

    std::vector<CycMatrix> hom_space() const;
    /// Multiplicity of tau_0 (extended trivially across W1 + gW1) in V_tau, V_gtau
    /// as K-modules; and of tau_0 in V_tau as an H_0 = W0 x mu_p module.
    Q multiplicity_tau_k() const;
    Q multiplicity_gtau_k() const;
    Q multiplicity_tau_h0() const;

    /// Operator normalized to act by c on V_tau0, from V_gtau to V_tau in fixed-space bases.
    CycMatrix intertwiner(const Cyclotomic& c) const;
    /// Matrices of Sp(W*) preserving W and gW, block diagonal in W1, W3, W0, gW1, gW3.
    FpMat random_stabilizer_element(std::uint64_t seed) const;
    /// Projective Weil operator for s restricted to V_tau and V_gtau.
    std::pair<CycMatrix, CycMatrix> restricted_weil(const FpMat& s) const;

private:
    Q multiplicity(const FixedSpace& fs, bool over_k) const;

    FiberedSum data_;
    HeisenbergRep rep_;
    FixedSpace v_tau_, v_gtau_, v_tau0_;
    std::vector<FpVec> k_gens_;
    std::vector<MonomialMatrix> on_tau_, on_gtau_;
};

struct IntertwiningReport {
    std::int64_t p = 0;
    size_t dim_w = 0, dim_w0 = 0, dim_star = 0;
    size_t dim_v_star = 0, dim_v_tau = 0, dim_v_gtau = 0, dim_v_tau0 = 0;
    size_t hom_dim = 0;
    Q mult_tau_k, mult_gtau_k, mult_tau_h0;
    bool intertwines = false;     // X B = A X for every generator of K
    bool acts_by_c = false;       // X v = c v on V_tau0
    bool rank_matches = false;    // rank X = dim V_tau0
    bool scaling = false;         // I_c = c I_1
    size_t equivariance_checked = 0, equivariance_failures = 0;
    CycMatrix op;

    bool pass() const;
};

/// Full check of one configuration; hom dimension other than 1 raises TheoremViolation.
IntertwiningReport run_intertwining(std::int64_t p, size_t dim_w13, size_t dim_w0, const Cyclotomic& c,
                                    std::uint64_t seed = 1, size_t samples = 3);

}  // namespace tameforge
