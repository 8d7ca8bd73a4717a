#include "tameforge/intmatrix.hpp"

#include "tameforge/errors.hpp"

#include <algorithm>
#include <utility>

namespace tameforge {

IntMat to_intmat(const IMat& m) {
    IntMat out(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (auto v : m[i]) out[i].emplace_back(static_cast<long>(v));
    return out;
}

IntMat identity_intmat(size_t n) {
    IntMat id(n, std::vector<Z>(n, 0));
    for (size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
}

IntMat multiply(const IntMat& a, const IntMat& b) {
    size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    IntMat c(n, std::vector<Z>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

QMat to_qmat(const IMat& m) {
    QMat out(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (auto v : m[i]) out[i].emplace_back(static_cast<long>(v));
    return out;
}

namespace {

void swap_rows(IntMat& m, size_t a, size_t b) { std::swap(m[a], m[b]); }

void swap_cols(IntMat& m, size_t a, size_t b) {
    for (auto& row : m) std::swap(row[a], row[b]);
}

// row_dst -= q * row_src
void add_row(IntMat& m, size_t dst, size_t src, const Z& q) {
    for (size_t j = 0; j < m[dst].size(); ++j) m[dst][j] -= q * m[src][j];
}

void add_col(IntMat& m, size_t dst, size_t src, const Z& q) {
    for (auto& row : m) row[dst] -= q * row[src];
}

}  // namespace

SmithForm smith_normal_form(const IntMat& a) {
    SmithForm s;
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    s.D = a;
    s.U = identity_intmat(rows);
    s.V = identity_intmat(cols);
    IntMat& D = s.D;

    for (size_t t = 0; t < std::min(rows, cols); ++t) {
        // smallest nonzero in the trailing block
        bool found = false;
        size_t pi = t, pj = t;
        Z best;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (D[i][j] != 0 && (!found || abs(D[i][j]) < best)) {
                    found = true;
                    best = abs(D[i][j]);
                    pi = i;
                    pj = j;
                }
        if (!found) break;
        swap_rows(D, t, pi);
        swap_rows(s.U, t, pi);
        swap_cols(D, t, pj);
        swap_cols(s.V, t, pj);

        while (true) {
            bool clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (D[i][t] == 0) continue;
                Z q = D[i][t] / D[t][t];
                add_row(D, i, t, q);
                add_row(s.U, i, t, q);
                if (D[i][t] != 0) clean = false;
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (D[t][j] == 0) continue;
                Z q = D[t][j] / D[t][t];
                add_col(D, j, t, q);
                add_col(s.V, j, t, q);
                if (D[t][j] != 0) clean = false;
            }
            if (!clean) {
                // move the smallest remainder in row/column t into the pivot
                size_t bi = t, bj = t;
                Z b = abs(D[t][t]);
                for (size_t i = t + 1; i < rows; ++i)
                    if (D[i][t] != 0 && abs(D[i][t]) < b) {
                        b = abs(D[i][t]);
                        bi = i;
                        bj = t;
                    }
                for (size_t j = t + 1; j < cols; ++j)
                    if (D[t][j] != 0 && abs(D[t][j]) < b) {
                        b = abs(D[t][j]);
                        bi = t;
                        bj = j;
                    }
                swap_rows(D, t, bi);
                swap_rows(s.U, t, bi);
                swap_cols(D, t, bj);
                swap_cols(s.V, t, bj);
                continue;
            }
            // divisibility of the trailing block by the pivot
            bool divisible = true;
            for (size_t i = t + 1; i < rows && divisible; ++i)
                for (size_t j = t + 1; j < cols; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        add_row(D, t, i, -1);
                        add_row(s.U, t, i, -1);
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (D[t][t] < 0) {
            for (auto& x : D[t]) x = -x;
            for (auto& x : s.U[t]) x = -x;
        }
        s.invariants.push_back(D[t][t]);
        s.rank = t + 1;
    }
    return s;
}

Z torsion_order(const IntMat& rows) {
    Z order = 1;
    for (const auto& d : smith_normal_form(rows).invariants) order *= d;
    return order;
}

std::vector<size_t> rref(QMat& m) {
    std::vector<size_t> pivots;
    size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = rows;
        for (size_t i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        Q inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Q f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

size_t rank_q(QMat m) { return rref(m).size(); }

QMat nullspace_q(const QMat& a, size_t cols) {
    QMat m = a;
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    QMat basis;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        QVec v(cols, 0);
        v[f] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

QMat inverse_q(const QMat& a) {
    size_t n = a.size();
    QMat aug(n, QVec(2 * n, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = 1;
    }
    auto pivots = rref(aug);
    if (pivots.size() < n || (n && pivots[n - 1] != n - 1)) return {};
    QMat inv(n, QVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

QMat transpose(const QMat& a) {
    if (a.empty()) return {};
    QMat t(a[0].size(), QVec(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

IMat transpose(const IMat& a) {
    if (a.empty()) return {};
    IMat t(a[0].size(), IVec(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

QSpan::QSpan(const QMat& vectors, size_t dim) : dim_(dim), basis_(vectors) {
    pivots_ = rref(basis_);
    basis_.resize(pivots_.size());
}

bool QSpan::contains(const QVec& v) const {
    QVec w = v;
    for (size_t r = 0; r < basis_.size(); ++r) {
        Q f = w[pivots_[r]];
        if (f == 0) continue;
        for (size_t j = 0; j < dim_; ++j) w[j] -= f * basis_[r][j];
    }
    return std::all_of(w.begin(), w.end(), [](const Q& x) { return x == 0; });
}

ModSolveResult solve_mod(const IntMat& a, const std::vector<Z>& b, std::int64_t modulus,
                         size_t max_solutions) {
    ModSolveResult res;
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    SmithForm s = smith_normal_form(a);
    Z N(static_cast<long>(modulus));

    std::vector<Z> c(rows, 0);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < rows; ++j) c[i] += s.U[i][j] * b[j];

    // per-coordinate solution sets for y = V^{-1} x
    std::vector<std::vector<std::int64_t>> choices(cols);
    for (size_t i = 0; i < cols; ++i) {
        if (i < s.rank) {
            Z d = s.D[i][i];
            Z g;
            mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), N.get_mpz_t());
            Z ci = c[i] % N;
            if (ci < 0) ci += N;
            if (ci % g != 0) return res;
            Z step = N / g;
            Z dg = (d / g) % step;
            Z inv = 0;
            if (step > 1) mpz_invert(inv.get_mpz_t(), dg.get_mpz_t(), step.get_mpz_t());
            Z y0 = ((ci / g) * inv) % step;
            for (Z t = 0; t < g; ++t) choices[i].push_back(to_int64((y0 + t * step) % N));
        } else {
            for (std::int64_t v = 0; v < modulus; ++v) choices[i].push_back(v);
        }
    }
    for (size_t i = s.rank; i < rows; ++i)
        if (c[i] % N != 0) return res;

    res.solvable = true;
    res.solution_count = 1;
    for (auto& ch : choices) res.solution_count *= static_cast<unsigned long>(ch.size());

    std::vector<size_t> idx(cols, 0);
    while (true) {
        if (res.solutions.size() >= max_solutions) {
            res.truncated = res.solution_count > static_cast<unsigned long>(res.solutions.size());
            break;
        }
        IVec x(cols, 0);
        for (size_t r = 0; r < cols; ++r) {
            Z acc = 0;
            for (size_t k = 0; k < cols; ++k) acc += s.V[r][k] * choices[k][idx[k]];
            acc %= N;
            if (acc < 0) acc += N;
            x[r] = to_int64(acc);
        }
        res.solutions.push_back(std::move(x));
        size_t k = 0;
        while (k < cols && ++idx[k] == choices[k].size()) idx[k++] = 0;
        if (k == cols) break;
    }
    std::sort(res.solutions.begin(), res.solutions.end());
    return res;
}

}  // namespace tameforge
