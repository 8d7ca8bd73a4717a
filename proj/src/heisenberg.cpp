#include "tameforge/heisenberg.hpp"

#include "tameforge/rational.hpp"

#include <algorithm>

namespace tameforge {

namespace fp {

FpMat identity(size_t n) {
    FpMat m(n, FpVec(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

FpMat mul(const FpMat& a, const FpMat& b, std::int64_t p) {
    size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    FpMat c(n, FpVec(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (!a[i][l]) continue;
            for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    for (auto& row : c)
        for (auto& x : row) x = mod(x, p);
    return c;
}

FpVec apply(const FpMat& a, const FpVec& v, std::int64_t p) {
    FpVec w(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        std::int64_t s = 0;
        for (size_t j = 0; j < v.size(); ++j) s += a[i][j] * v[j];
        w[i] = mod(s, p);
    }
    return w;
}

FpMat transpose(const FpMat& a) {
    if (a.empty()) return {};
    FpMat t(a[0].size(), FpVec(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

namespace {

// Row echelon form mod p; returns rank and determinant of the square prefix.
size_t echelon(FpMat& a, std::int64_t p, std::int64_t* det) {
    size_t rows = a.size(), cols = rows ? a[0].size() : 0, r = 0;
    std::int64_t d = 1;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = rows;
        for (size_t i = r; i < rows; ++i)
            if (mod(a[i][c], p)) {
                piv = i;
                break;
            }
        if (piv == rows) {
            d = 0;
            continue;
        }
        if (piv != r) {
            std::swap(a[r], a[piv]);
            d = mod(-d, p);
        }
        std::int64_t pv = mod(a[r][c], p);
        d = mod(d * pv, p);
        std::int64_t inv = inv_mod(pv, p);
        for (auto& x : a[r]) x = mod(x * inv, p);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || !mod(a[i][c], p)) continue;
            std::int64_t f = mod(a[i][c], p);
            for (size_t j = 0; j < cols; ++j) a[i][j] = mod(a[i][j] - f * a[r][j], p);
        }
        ++r;
    }
    if (det) *det = (r == rows) ? d : 0;
    return r;
}

}  // namespace

size_t rank(FpMat a, std::int64_t p) { return echelon(a, p, nullptr); }

std::int64_t det(FpMat a, std::int64_t p) {
    std::int64_t d = 0;
    echelon(a, p, &d);
    return d;
}

FpMat inverse(const FpMat& a, std::int64_t p) {
    size_t n = a.size();
    FpMat aug(n, FpVec(2 * n, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i][j] = mod(a[i][j], p);
        aug[i][n + i] = 1;
    }
    // pivot only within the first n columns
    for (size_t c = 0; c < n; ++c) {
        size_t piv = n;
        for (size_t i = c; i < n; ++i)
            if (aug[i][c]) {
                piv = i;
                break;
            }
        if (piv == n) return {};
        std::swap(aug[c], aug[piv]);
        std::int64_t inv = inv_mod(aug[c][c], p);
        for (auto& x : aug[c]) x = mod(x * inv, p);
        for (size_t i = 0; i < n; ++i) {
            if (i == c || !aug[i][c]) continue;
            std::int64_t f = aug[i][c];
            for (size_t j = 0; j < 2 * n; ++j) aug[i][j] = mod(aug[i][j] - f * aug[c][j], p);
        }
    }
    FpMat inv(n, FpVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

bool in_column_span(const FpMat& a, const FpVec& v, std::int64_t p) {
    FpMat t = transpose(a);
    size_t r = rank(t, p);
    t.push_back(v);
    return rank(t, p) == r;
}

FpVec unrank(std::uint64_t index, size_t dim, std::int64_t p) {
    FpVec v(dim);
    for (size_t i = 0; i < dim; ++i) {
        v[i] = static_cast<std::int64_t>(index % static_cast<std::uint64_t>(p));
        index /= static_cast<std::uint64_t>(p);
    }
    return v;
}

std::uint64_t rank_vector(const FpVec& v, std::int64_t p) {
    std::uint64_t r = 0;
    for (size_t i = v.size(); i-- > 0;) r = r * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(mod(v[i], p));
    return r;
}

std::uint64_t power(std::int64_t p, size_t n) {
    std::uint64_t r = 1;
    for (size_t i = 0; i < n; ++i) r *= static_cast<std::uint64_t>(p);
    return r;
}

}  // namespace fp

SymplecticSpace::SymplecticSpace(std::int64_t p, FpMat form) : p_(p), form_(std::move(form)) {
    if (!is_prime(p_) || p_ == 2) throw Error("EvenPrime", "symplectic spaces need an odd prime");
    size_t n = form_.size();
    if (n % 2) throw Error("OddDimension", "symplectic space has odd dimension");
    for (auto& row : form_) {
        if (row.size() != n) throw Error("NotSymplectic", "form is not square");
        for (auto& x : row) x = mod(x, p_);
    }
    for (size_t i = 0; i < n; ++i) {
        if (form_[i][i] != 0) throw Error("NotSymplectic", "form is not alternating");
        for (size_t j = 0; j < n; ++j)
            if (mod(form_[i][j] + form_[j][i], p_) != 0) throw Error("NotSymplectic", "form is not alternating");
    }
    if (fp::det(form_, p_) == 0) throw Error("NotSymplectic", "form is degenerate");
}

SymplecticSpace SymplecticSpace::standard(std::int64_t p, size_t n) {
    FpMat j(2 * n, FpVec(2 * n, 0));
    for (size_t i = 0; i < n; ++i) {
        j[i][n + i] = 1;
        j[n + i][i] = p - 1;
    }
    return SymplecticSpace(p, j);
}

std::int64_t SymplecticSpace::beta(const FpVec& u, const FpVec& v) const {
    std::int64_t s = 0;
    for (size_t i = 0; i < u.size(); ++i) {
        if (!u[i]) continue;
        for (size_t j = 0; j < v.size(); ++j) s += u[i] * form_[i][j] * v[j];
    }
    return mod(s, p_);
}

bool SymplecticSpace::is_symplectic(const FpMat& s) const {
    if (s.size() != dim()) return false;
    FpMat lhs = fp::mul(fp::mul(fp::transpose(s), form_, p_), s, p_);
    return lhs == form_;
}

Polarization standard_polarization(const SymplecticSpace& space) {
    size_t n = space.half_dim();
    FpMat id = fp::identity(2 * n);
    Polarization pol;
    pol.plus.assign(id.begin(), id.begin() + static_cast<std::ptrdiff_t>(n));
    pol.minus.assign(id.begin() + static_cast<std::ptrdiff_t>(n), id.end());
    return pol;
}

HeisenbergGroup::HeisenbergGroup(SymplecticSpace space) : space_(std::move(space)) {
    if (order() > (1u << 22)) throw Error("TooLarge", "Heisenberg group too large to enumerate");
}

std::uint32_t HeisenbergGroup::index(const FpVec& w, std::int64_t k) const {
    return static_cast<std::uint32_t>(fp::rank_vector(w, space_.p()) * static_cast<std::uint64_t>(space_.p()) +
                                      static_cast<std::uint64_t>(mod(k, space_.p())));
}

std::pair<FpVec, std::int64_t> HeisenbergGroup::element(std::uint32_t index) const {
    auto p = static_cast<std::uint64_t>(space_.p());
    return {fp::unrank(index / p, space_.dim(), space_.p()), static_cast<std::int64_t>(index % p)};
}

std::uint32_t HeisenbergGroup::mul(std::uint32_t x, std::uint32_t y) const {
    auto [w1, k1] = element(x);
    auto [w2, k2] = element(y);
    std::int64_t p = space_.p();
    FpVec w(w1.size());
    for (size_t i = 0; i < w.size(); ++i) w[i] = mod(w1[i] + w2[i], p);
    std::int64_t c = (p + 1) / 2;
    return index(w, k1 + k2 + c * space_.beta(w1, w2));
}

const FiniteGroup& HeisenbergGroup::group() const {
    if (!built_) {
        auto n = static_cast<size_t>(order());
        std::vector<std::uint32_t> table(n * n);
        for (std::uint32_t x = 0; x < n; ++x)
            for (std::uint32_t y = 0; y < n; ++y) table[static_cast<size_t>(x) * n + y] = mul(x, y);
        table_ = FiniteGroup(n, std::move(table));
        built_ = true;
    }
    return table_;
}

bool LinearRep::is_multiplicative() const {
    size_t n = group->order();
    for (std::uint32_t x = 0; x < n; ++x)
        for (std::uint32_t y = 0; y < n; ++y)
            if (images[x] * images[y] != images[group->mul(x, y)]) return false;
    return true;
}

std::vector<Cyclotomic> LinearRep::character() const {
    std::vector<Cyclotomic> chi;
    for (const auto& m : images) chi.push_back(m.trace());
    return chi;
}

ClassFunction LinearRep::class_function() const {
    return ClassFunction::from_elements(group, group->classes(), character());
}

LinearRep induce_rep(const FiniteGroup& group, const std::vector<std::uint32_t>& subgroup,
                     const std::vector<CycMatrix>& sub_images) {
    if (!group.is_subgroup(subgroup) || !std::is_sorted(subgroup.begin(), subgroup.end()))
        throw Error("NotASubgroup", "inducing set is not a (sorted) subgroup");
    if (sub_images.size() != subgroup.size()) throw Error("NotARepresentation", "one image per subgroup element required");
    std::vector<std::int64_t> pos(group.order(), -1);
    for (size_t i = 0; i < subgroup.size(); ++i) pos[subgroup[i]] = static_cast<std::int64_t>(i);
    size_t d = sub_images.front().rows();
    for (const auto& m : sub_images)
        if (m.rows() != d || m.cols() != d) throw Error("NotARepresentation", "images have inconsistent dimensions");
    for (auto x : subgroup)
        for (auto y : subgroup)
            if (sub_images[pos[x]] * sub_images[pos[y]] != sub_images[pos[group.mul(x, y)]])
                throw Error("NotARepresentation", "subgroup images are not multiplicative");

    auto reps = group.left_coset_reps(subgroup);
    size_t m = reps.size();
    LinearRep out;
    out.group = &group;
    out.dim = m * d;
    out.images.reserve(group.order());
    for (std::uint32_t g = 0; g < group.order(); ++g) {
        CycMatrix img(m * d, m * d);
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) {
                auto k = group.mul(group.mul(group.inv(reps[i]), g), reps[j]);
                if (pos[k] < 0) continue;
                const CycMatrix& blk = sub_images[pos[k]];
                for (size_t a = 0; a < d; ++a)
                    for (size_t b = 0; b < d; ++b) img(i * d + a, j * d + b) = blk(a, b);
            }
        out.images.push_back(std::move(img));
    }
    return out;
}

HeisenbergRep::HeisenbergRep(SymplecticSpace space, Polarization pol) : space_(std::move(space)), pol_(std::move(pol)) {
    std::int64_t p = space_.p();
    n_ = space_.half_dim();
    if (pol_.plus.size() != n_ || pol_.minus.size() != n_)
        throw Error("NotAPolarization", "each Lagrangian needs half the dimension");
    for (const auto* part : {&pol_.plus, &pol_.minus})
        for (const auto& u : *part) {
            if (u.size() != space_.dim()) throw Error("NotAPolarization", "basis vector has wrong length");
            for (const auto& v : *part)
                if (space_.beta(u, v) != 0) throw Error("NotAPolarization", "subspace is not totally isotropic");
        }
    FpMat gram(n_, FpVec(n_));
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j) gram[i][j] = space_.beta(pol_.plus[i], pol_.minus[j]);
    FpMat ginv = fp::inverse(gram, p);
    if (ginv.empty() && n_ > 0) throw Error("NotAPolarization", "Lagrangians are not complementary");
    e_ = pol_.plus;
    f_.assign(n_, FpVec(space_.dim(), 0));
    for (size_t j = 0; j < n_; ++j)
        for (size_t l = 0; l < n_; ++l)
            for (size_t k = 0; k < space_.dim(); ++k) f_[j][k] = mod(f_[j][k] + pol_.minus[l][k] * ginv[l][j], p);
    dim_ = static_cast<size_t>(fp::power(p, n_));
}

void HeisenbergRep::coordinates(const FpVec& w, FpVec& a, FpVec& b) const {
    a.resize(n_);
    b.resize(n_);
    for (size_t i = 0; i < n_; ++i) {
        a[i] = space_.beta(w, f_[i]);
        b[i] = mod(-space_.beta(w, e_[i]), space_.p());
    }
}

MonomialMatrix HeisenbergRep::image(const FpVec& w, std::int64_t k) const {
    std::int64_t p = space_.p(), c = (p + 1) / 2;
    FpVec a, b;
    coordinates(w, a, b);
    std::int64_t ab = 0;
    for (size_t i = 0; i < n_; ++i) ab += a[i] * b[i];
    MonomialMatrix m;
    m.level = p;
    m.perm.resize(dim_);
    m.phase.resize(dim_);
    for (std::uint32_t y = 0; y < dim_; ++y) {
        FpVec x = fp::unrank(y, n_, p);
        std::int64_t ax = 0;
        for (size_t i = 0; i < n_; ++i) {
            x[i] = mod(x[i] - b[i], p);
            ax += a[i] * x[i];
        }
        m.perm[y] = static_cast<std::uint32_t>(fp::rank_vector(x, p));
        m.phase[y] = mod(k - ax - c * ab, p);
    }
    return m;
}

std::vector<Cyclotomic> HeisenbergRep::character(const HeisenbergGroup& h) const {
    std::vector<Cyclotomic> chi;
    for (std::uint32_t x = 0; x < h.order(); ++x) {
        auto [w, k] = h.element(x);
        chi.push_back(image(w, k).trace());
    }
    return chi;
}

LinearRep HeisenbergRep::linear_rep(const HeisenbergGroup& h) const {
    LinearRep r;
    r.group = &h.group();
    r.dim = dim_;
    for (std::uint32_t x = 0; x < h.order(); ++x) {
        auto [w, k] = h.element(x);
        r.images.push_back(image(w, k).dense());
    }
    return r;
}

CycMatrix HeisenbergRep::averaged_intertwiner(const FpMat& s, std::uint32_t j0, const std::vector<std::uint32_t>& rows,
                                              const std::vector<std::uint32_t>& cols) const {
    std::int64_t p = space_.p(), c = (p + 1) / 2;
    std::vector<std::int64_t> row_pos(dim_, -1), col_pos(dim_, -1);
    size_t nr = rows.empty() ? dim_ : rows.size(), nc = cols.empty() ? dim_ : cols.size();
    for (size_t i = 0; i < nr; ++i) row_pos[rows.empty() ? i : rows[i]] = static_cast<std::int64_t>(i);
    for (size_t i = 0; i < nc; ++i) col_pos[cols.empty() ? i : cols[i]] = static_cast<std::int64_t>(i);
    std::vector<std::int64_t> counts(nr * nc * static_cast<size_t>(p), 0);
    FpVec y0 = fp::unrank(j0, n_, p);
    FpVec a, b, a2, b2, yr(n_), yc(n_);
    std::uint64_t total = space_.size();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        FpVec w = fp::unrank(idx, space_.dim(), p);
        coordinates(w, a, b);
        coordinates(fp::apply(s, w, p), a2, b2);
        std::int64_t e = 0;
        for (size_t i = 0; i < n_; ++i) {
            yr[i] = mod(y0[i] - b2[i], p);
            yc[i] = mod(y0[i] - b[i], p);
            e += -a2[i] * yr[i] - c * a2[i] * b2[i] + a[i] * y0[i] - c * a[i] * b[i];
        }
        auto r = row_pos[fp::rank_vector(yr, p)];
        auto q = col_pos[fp::rank_vector(yc, p)];
        if (r < 0 || q < 0) continue;
        ++counts[(static_cast<size_t>(r) * nc + static_cast<size_t>(q)) * static_cast<size_t>(p) +
                 static_cast<size_t>(mod(e, p))];
    }
    CycMatrix out(nr, nc);
    std::vector<std::int64_t> cell(static_cast<size_t>(p));
    for (size_t r = 0; r < nr; ++r)
        for (size_t q = 0; q < nc; ++q) {
            auto base = counts.begin() + static_cast<std::ptrdiff_t>((r * nc + q) * static_cast<size_t>(p));
            std::copy(base, base + p, cell.begin());
            out(r, q) = Cyclotomic::from_exponent_counts(p, cell);
        }
    return out;
}

}  // namespace tameforge
