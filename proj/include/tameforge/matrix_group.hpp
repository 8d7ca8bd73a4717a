#pragma once

#include "tameforge/finite_field.hpp"
#include "tameforge/finite_group.hpp"

#include <map>

namespace tameforge {

/// Square matrix over a finite field, row-major.
using FMat = std::vector<FiniteField::Elem>;

namespace fmat {
FMat identity(const FiniteField& f, size_t n);
FMat mul(const FiniteField& f, const FMat& a, const FMat& b, size_t n);
FMat inverse(const FiniteField& f, const FMat& a, size_t n);  // empty if singular
FiniteField::Elem det(const FiniteField& f, const FMat& a, size_t n);
FiniteField::Elem trace(const FiniteField& f, const FMat& a, size_t n);
FMat transpose(const FMat& a, size_t n);
FMat scaled(const FiniteField& f, const FMat& a, FiniteField::Elem c);
bool is_scalar(const FMat& a, size_t n);
/// Block diagonal diag(a, b).
FMat block_diag(const FMat& a, size_t n, const FMat& b, size_t m);
}  // namespace fmat

/// Finite subgroup of GL_n(F_q) with all elements enumerated. Conjugacy
/// classes are orbits under conjugation by the generators.
class MatrixGroup {
public:
    MatrixGroup(FieldPtr field, size_t n, std::vector<FMat> generators, size_t bound = kDefaultElementBound);
    /// All of GL_n(F_q) by direct enumeration.
    static MatrixGroup general_linear(FieldPtr field, size_t n, size_t bound = kDefaultElementBound);

    const FiniteField& field() const { return *field_; }
    FieldPtr field_ptr() const { return field_; }
    size_t n() const { return n_; }
    size_t order() const { return elements_.size(); }
    const std::vector<FMat>& elements() const { return elements_; }
    const FMat& element(std::uint32_t i) const { return elements_[i]; }
    const std::vector<FMat>& generators() const { return generators_; }
    bool contains(const FMat& a) const { return index_.count(a) > 0; }
    /// Throws NotInGroup.
    std::uint32_t index_of(const FMat& a) const;

    FMat mul(const FMat& a, const FMat& b) const { return fmat::mul(*field_, a, b, n_); }
    FMat inv(const FMat& a) const { return fmat::inverse(*field_, a, n_); }

    const std::vector<std::vector<std::uint32_t>>& classes() const;
    std::uint32_t class_of(std::uint32_t i) const;
    ClassFunction class_function(const std::vector<Cyclotomic>& values) const;
    /// Cayley-table view, indices matching elements().
    FiniteGroup to_finite_group() const;

private:
    void compute_classes() const;

    FieldPtr field_;
    size_t n_;
    std::vector<FMat> generators_;
    std::vector<FMat> elements_;
    std::map<FMat, std::uint32_t> index_;
    mutable std::vector<std::vector<std::uint32_t>> classes_;
    mutable std::vector<std::uint32_t> class_of_;
};

}  // namespace tameforge
