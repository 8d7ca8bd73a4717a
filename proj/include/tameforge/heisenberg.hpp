#pragma once

#include "tameforge/cyclo_matrix.hpp"
#include "tameforge/finite_group.hpp"

#include <cstdint>
#include <vector>

namespace tameforge {

using FpVec = std::vector<std::int64_t>;
using FpMat = std::vector<FpVec>;

namespace fp {
FpMat identity(size_t n);
FpMat mul(const FpMat& a, const FpMat& b, std::int64_t p);
FpVec apply(const FpMat& a, const FpVec& v, std::int64_t p);
FpMat transpose(const FpMat& a);
size_t rank(FpMat a, std::int64_t p);
/// Empty if singular.
FpMat inverse(const FpMat& a, std::int64_t p);
std::int64_t det(FpMat a, std::int64_t p);
/// v lies in the column span of a.
bool in_column_span(const FpMat& a, const FpVec& v, std::int64_t p);
FpVec unrank(std::uint64_t index, size_t dim, std::int64_t p);
std::uint64_t rank_vector(const FpVec& v, std::int64_t p);
std::uint64_t power(std::int64_t p, size_t n);
}  // namespace fp

/// Symplectic F_p-space with an alternating nondegenerate form beta(u, v) = u^T J v.
class SymplecticSpace {
public:
    SymplecticSpace(std::int64_t p, FpMat form);
    /// F_p^{2n} with beta((a,b),(a',b')) = a.b' - b.a'.
    static SymplecticSpace standard(std::int64_t p, size_t n);

    std::int64_t p() const { return p_; }
    size_t dim() const { return form_.size(); }
    size_t half_dim() const { return form_.size() / 2; }
    const FpMat& form() const { return form_; }
    std::int64_t beta(const FpVec& u, const FpVec& v) const;
    std::uint64_t size() const { return fp::power(p_, dim()); }
    bool is_symplectic(const FpMat& s) const;

private:
    std::int64_t p_;
    FpMat form_;
};

/// Complementary Lagrangians, given by basis vectors (rows).
struct Polarization {
    FpMat plus;
    FpMat minus;
};

Polarization standard_polarization(const SymplecticSpace& space);

/// Elements (w, k), indexed as rank(w) * p + k; multiplication
/// (w1,k1)(w2,k2) = (w1+w2, k1+k2+((p+1)/2) beta(w1,w2)).
class HeisenbergGroup {
public:
    explicit HeisenbergGroup(SymplecticSpace space);

    const SymplecticSpace& space() const { return space_; }
    std::uint64_t order() const { return space_.size() * static_cast<std::uint64_t>(space_.p()); }
    std::uint32_t index(const FpVec& w, std::int64_t k) const;
    std::pair<FpVec, std::int64_t> element(std::uint32_t index) const;
    std::uint32_t mul(std::uint32_t x, std::uint32_t y) const;
    /// Cayley table view (built on first use).
    const FiniteGroup& group() const;

private:
    SymplecticSpace space_;
    mutable FiniteGroup table_;
    mutable bool built_ = false;
};

/// Dense images for every element of a finite group.
struct LinearRep {
    const FiniteGroup* group = nullptr;
    std::vector<CycMatrix> images;
    size_t dim = 0;

    bool is_multiplicative() const;
    std::vector<Cyclotomic> character() const;
    ClassFunction class_function() const;
};

/// Induction from a subgroup (sorted element indices) with images indexed by
/// position in that list. Block (i, j) of the result is rho(t_i^{-1} g t_j).
LinearRep induce_rep(const FiniteGroup& group, const std::vector<std::uint32_t>& subgroup,
                     const std::vector<CycMatrix>& sub_images);

/// Schroedinger model of the Heisenberg representation on functions on the
/// minus Lagrangian, with central character zeta_p^k.
class HeisenbergRep {
public:
    HeisenbergRep(SymplecticSpace space, Polarization pol);

    const SymplecticSpace& space() const { return space_; }
    std::int64_t p() const { return space_.p(); }
    size_t dim() const { return dim_; }
    /// Symplectic coordinates (a, b) of w in the polarization.
    void coordinates(const FpVec& w, FpVec& a, FpVec& b) const;
    MonomialMatrix image(const FpVec& w, std::int64_t k) const;
    std::vector<Cyclotomic> character(const HeisenbergGroup& h) const;
    LinearRep linear_rep(const HeisenbergGroup& h) const;

    /// sum_w tau(s w, 0) E_{j0 j0} tau(w, 0)^{-1}, restricted to the given
    /// row/column coordinates (all when empty). s acts on column vectors.
    CycMatrix averaged_intertwiner(const FpMat& s, std::uint32_t j0, const std::vector<std::uint32_t>& rows = {},
                                   const std::vector<std::uint32_t>& cols = {}) const;

private:
    SymplecticSpace space_;
    Polarization pol_;
    FpMat e_, f_;   // dual bases: beta(e_i, f_j) = delta_ij
    size_t n_;
    size_t dim_;
};

}  // namespace tameforge
