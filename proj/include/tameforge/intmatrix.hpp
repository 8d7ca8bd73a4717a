#pragma once

#include "tameforge/rational.hpp"

#include <cstdint>
#include <vector>

namespace tameforge {

using IntMat = std::vector<std::vector<Z>>;
using QVec = std::vector<Q>;
using QMat = std::vector<QVec>;
using IVec = std::vector<std::int64_t>;
using IMat = std::vector<IVec>;

IntMat to_intmat(const IMat& m);
IntMat identity_intmat(size_t n);
IntMat multiply(const IntMat& a, const IntMat& b);
QMat to_qmat(const IMat& m);

/// Smith normal form: U * A * V = D with U, V unimodular and D diagonal,
/// d_0 | d_1 | ... , nonnegative.
struct SmithForm {
    IntMat U, D, V;
    std::vector<Z> invariants;  // nonzero diagonal entries
    size_t rank = 0;
};

SmithForm smith_normal_form(const IntMat& a);

/// Product of the nonzero invariant factors: order of the torsion subgroup
/// of Z^n / (row span of a).
Z torsion_order(const IntMat& rows);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<size_t> rref(QMat& m);
size_t rank_q(QMat m);
/// Basis of {x : a x = 0}; `cols` is needed when a has no rows.
QMat nullspace_q(const QMat& a, size_t cols);
/// Inverse of a square rational matrix, empty result if singular.
QMat inverse_q(const QMat& a);
QMat transpose(const QMat& a);
IMat transpose(const IMat& a);

/// Row span over Q with a membership test.
class QSpan {
public:
    QSpan() = default;
    QSpan(const QMat& vectors, size_t dim);
    bool contains(const QVec& v) const;
    size_t dimension() const { return basis_.size(); }

private:
    size_t dim_ = 0;
    QMat basis_;
    std::vector<size_t> pivots_;
};

/// Solutions of a x = b over Z/N.
struct ModSolveResult {
    bool solvable = false;
    Z solution_count = 0;
    bool truncated = false;
    std::vector<IVec> solutions;  // lexicographically sorted
};

ModSolveResult solve_mod(const IntMat& a, const std::vector<Z>& b, std::int64_t modulus,
                         size_t max_solutions);

}  // namespace tameforge
