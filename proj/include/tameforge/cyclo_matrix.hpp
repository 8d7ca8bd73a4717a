#pragma once

#include "tameforge/cyclotomic.hpp"

#include <cstdint>
#include <vector>

namespace tameforge {

/// Dense matrix over Q(zeta_N).
class CycMatrix {
public:
    CycMatrix() = default;
    CycMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static CycMatrix identity(size_t n);
    static CycMatrix scalar(size_t n, const Cyclotomic& c);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Cyclotomic& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const Cyclotomic& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    CycMatrix operator*(const CycMatrix& o) const;
    CycMatrix operator+(const CycMatrix& o) const;
    CycMatrix operator-(const CycMatrix& o) const;
    CycMatrix scaled(const Cyclotomic& c) const;
    bool operator==(const CycMatrix& o) const;
    bool operator!=(const CycMatrix& o) const { return !(*this == o); }

    CycMatrix conj_transpose() const;
    Cyclotomic trace() const;
    Cyclotomic determinant() const;
    size_t rank() const;
    /// Throws Error("Singular") if not invertible.
    CycMatrix inverse() const;
    /// Basis of {x : A x = 0} as column vectors (each a cols x 1 matrix).
    std::vector<CycMatrix> nullspace() const;
    bool is_zero() const;

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Cyclotomic> a_;
};

/// Monomial matrix over Q(zeta_N): M e_j = zeta_N^{phase[j]} e_{perm[j]}.
struct MonomialMatrix {
    std::int64_t level = 1;
    std::vector<std::uint32_t> perm;
    std::vector<std::int64_t> phase;

    size_t dim() const { return perm.size(); }
    static MonomialMatrix identity(size_t n, std::int64_t level);
    /// this * o
    MonomialMatrix compose(const MonomialMatrix& o) const;
    MonomialMatrix inverse() const;
    bool operator==(const MonomialMatrix& o) const;
    /// Counts c with trace = sum_j c[j] zeta^j.
    std::vector<std::int64_t> trace_counts() const;
    Cyclotomic trace() const;
    CycMatrix dense() const;
};

}  // namespace tameforge
