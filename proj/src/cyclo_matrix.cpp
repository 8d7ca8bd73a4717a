#include "tameforge/cyclo_matrix.hpp"

#include "tameforge/errors.hpp"
#include "tameforge/rational.hpp"

namespace tameforge {

CycMatrix CycMatrix::identity(size_t n) { return scalar(n, Cyclotomic(1)); }

CycMatrix CycMatrix::scalar(size_t n, const Cyclotomic& c) {
    CycMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = c;
    return m;
}

CycMatrix CycMatrix::operator*(const CycMatrix& o) const {
    if (cols_ != o.rows_) throw Error("DimensionMismatch", "matrix product shape mismatch");
    CycMatrix c(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const Cyclotomic& x = (*this)(i, k);
            if (x.is_zero()) continue;
            for (size_t j = 0; j < o.cols_; ++j) {
                const Cyclotomic& y = o(k, j);
                if (y.is_zero()) continue;
                c(i, j) += x * y;
            }
        }
    return c;
}

CycMatrix CycMatrix::operator+(const CycMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("DimensionMismatch", "matrix sum shape mismatch");
    CycMatrix c = *this;
    for (size_t i = 0; i < a_.size(); ++i) c.a_[i] += o.a_[i];
    return c;
}

CycMatrix CycMatrix::operator-(const CycMatrix& o) const { return *this + o.scaled(Cyclotomic(-1)); }

CycMatrix CycMatrix::scaled(const Cyclotomic& s) const {
    CycMatrix c = *this;
    for (auto& x : c.a_)
        if (!x.is_zero()) x *= s;
    return c;
}

bool CycMatrix::operator==(const CycMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < a_.size(); ++i)
        if (a_[i] != o.a_[i]) return false;
    return true;
}

bool CycMatrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

CycMatrix CycMatrix::conj_transpose() const {
    CycMatrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j).conj();
    return t;
}

Cyclotomic CycMatrix::trace() const {
    Cyclotomic t;
    for (size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

namespace {

// Row reduction to echelon form; returns pivot columns and accumulates the
// determinant factor when requested.
std::vector<size_t> eliminate(CycMatrix& m, Cyclotomic* det, bool reduced) {
    std::vector<size_t> pivots;
    size_t r = 0;
    Cyclotomic d(1);
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t piv = m.rows();
        for (size_t i = r; i < m.rows(); ++i)
            if (!m(i, c).is_zero()) {
                piv = i;
                break;
            }
        if (piv == m.rows()) continue;
        if (piv != r) {
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(piv, j));
            d = -d;
        }
        Cyclotomic pv = m(r, c);
        d *= pv;
        Cyclotomic inv = pv.inverse();
        for (size_t j = c; j < m.cols(); ++j)
            if (!m(r, j).is_zero()) m(r, j) *= inv;
        for (size_t i = reduced ? 0 : r + 1; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Cyclotomic f = m(i, c);
            for (size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    if (det) *det = (r == m.rows()) ? d : Cyclotomic();
    return pivots;
}

}  // namespace

Cyclotomic CycMatrix::determinant() const {
    if (rows_ != cols_) throw Error("DimensionMismatch", "determinant of non-square matrix");
    CycMatrix m = *this;
    Cyclotomic d;
    eliminate(m, &d, false);
    return d;
}

size_t CycMatrix::rank() const {
    CycMatrix m = *this;
    return eliminate(m, nullptr, false).size();
}

CycMatrix CycMatrix::inverse() const {
    if (rows_ != cols_) throw Error("DimensionMismatch", "inverse of non-square matrix");
    size_t n = rows_;
    CycMatrix aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
        aug(i, n + i) = Cyclotomic(1);
    }
    auto piv = eliminate(aug, nullptr, true);
    if (piv.size() < n || (n && piv[n - 1] != n - 1)) throw Error("Singular", "matrix is not invertible");
    CycMatrix inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

std::vector<CycMatrix> CycMatrix::nullspace() const {
    CycMatrix m = *this;
    auto pivots = eliminate(m, nullptr, true);
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<CycMatrix> basis;
    for (size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        CycMatrix v(cols_, 1);
        v(f, 0) = Cyclotomic(1);
        for (size_t r = 0; r < pivots.size(); ++r) v(pivots[r], 0) = -m(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

MonomialMatrix MonomialMatrix::identity(size_t n, std::int64_t level) {
    MonomialMatrix m;
    m.level = level;
    m.perm.resize(n);
    m.phase.assign(n, 0);
    for (size_t i = 0; i < n; ++i) m.perm[i] = static_cast<std::uint32_t>(i);
    return m;
}

MonomialMatrix MonomialMatrix::compose(const MonomialMatrix& o) const {
    // (this * o) e_j = this (z^{o.phase[j]} e_{o.perm[j]})
    std::int64_t l = lcm64(level, o.level);
    MonomialMatrix r;
    r.level = l;
    r.perm.resize(dim());
    r.phase.resize(dim());
    for (size_t j = 0; j < dim(); ++j) {
        auto k = o.perm[j];
        r.perm[j] = perm[k];
        r.phase[j] = mod(o.phase[j] * (l / o.level) + phase[k] * (l / level), l);
    }
    return r;
}

MonomialMatrix MonomialMatrix::inverse() const {
    MonomialMatrix r;
    r.level = level;
    r.perm.resize(dim());
    r.phase.resize(dim());
    for (size_t j = 0; j < dim(); ++j) {
        r.perm[perm[j]] = static_cast<std::uint32_t>(j);
        r.phase[perm[j]] = mod(-phase[j], level);
    }
    return r;
}

bool MonomialMatrix::operator==(const MonomialMatrix& o) const {
    if (perm != o.perm) return false;
    std::int64_t l = lcm64(level, o.level);
    for (size_t j = 0; j < dim(); ++j)
        if (mod(phase[j] * (l / level) - o.phase[j] * (l / o.level), l) != 0) return false;
    return true;
}

std::vector<std::int64_t> MonomialMatrix::trace_counts() const {
    std::vector<std::int64_t> counts(static_cast<size_t>(level), 0);
    for (size_t j = 0; j < dim(); ++j)
        if (perm[j] == j) ++counts[static_cast<size_t>(mod(phase[j], level))];
    return counts;
}

Cyclotomic MonomialMatrix::trace() const { return Cyclotomic::from_exponent_counts(level, trace_counts()); }

CycMatrix MonomialMatrix::dense() const {
    CycMatrix m(dim(), dim());
    for (size_t j = 0; j < dim(); ++j) m(perm[j], j) = Cyclotomic::zeta(level, phase[j]);
    return m;
}

}  // namespace tameforge
