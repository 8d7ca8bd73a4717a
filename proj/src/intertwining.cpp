#include "tameforge/intertwining.hpp"

#include "tameforge/weil.hpp"

#include <random>

namespace tameforge {

namespace {

struct PhasedUnionFind {
    std::vector<std::uint32_t> parent;
    std::vector<std::int64_t> offset;  // v[y] = zeta^{offset[y]} v[parent[y]]
    std::vector<bool> dead;
    std::int64_t level;

    PhasedUnionFind(size_t n, std::int64_t lvl) : parent(n), offset(n, 0), dead(n, false), level(lvl) {
        for (size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
    }

    std::pair<std::uint32_t, std::int64_t> find(std::uint32_t y) {
        std::int64_t acc = 0;
        std::uint32_t r = y;
        while (parent[r] != r) {
            acc += offset[r];
            r = parent[r];
        }
        // path compression
        std::int64_t rest = acc;
        while (parent[y] != y) {
            std::uint32_t next = parent[y];
            std::int64_t off = offset[y];
            parent[y] = r;
            offset[y] = mod(rest, level);
            rest -= off;
            y = next;
        }
        return {r, mod(acc, level)};
    }

    // v[z] = zeta^{ph} v[y]
    void relate(std::uint32_t y, std::uint32_t z, std::int64_t ph) {
        auto [ry, py] = find(y);
        auto [rz, pz] = find(z);
        if (ry == rz) {
            if (mod(pz - ph - py, level) != 0) dead[ry] = true;
            return;
        }
        parent[rz] = ry;
        offset[rz] = mod(ph + py - pz, level);
        if (dead[rz]) dead[ry] = true;
    }
};

}  // namespace

CycMatrix FixedSpace::inclusion() const {
    CycMatrix m(ambient_dim(), dim());
    for (size_t y = 0; y < ambient_dim(); ++y)
        if (component[y] >= 0) m(y, static_cast<size_t>(component[y])) = Cyclotomic::zeta(level, phase[y]);
    return m;
}

FixedSpace fixed_space(size_t dim, std::int64_t level, const std::vector<MonomialMatrix>& ops) {
    for (const auto& op : ops) level = lcm64(level, op.level);
    PhasedUnionFind uf(dim, level);
    for (const auto& op : ops) {
        if (op.dim() != dim) throw Error("DimensionMismatch", "operator has the wrong size");
        std::int64_t scale = level / op.level;
        for (std::uint32_t y = 0; y < dim; ++y) uf.relate(y, op.perm[y], op.phase[y] * scale);
    }
    FixedSpace fs;
    fs.level = level;
    fs.component.assign(dim, -1);
    fs.phase.assign(dim, 0);
    std::vector<std::int64_t> root_index(dim, -1), root_phase(dim, 0);
    for (std::uint32_t y = 0; y < dim; ++y) {
        auto [r, ph] = uf.find(y);
        if (uf.dead[r]) continue;
        if (root_index[r] < 0) {
            root_index[r] = static_cast<std::int64_t>(fs.roots.size());
            root_phase[r] = ph;
            fs.roots.push_back(y);
        }
        fs.component[y] = root_index[r];
        fs.phase[y] = mod(ph - root_phase[r], level);
    }
    return fs;
}

MonomialMatrix restrict_to(const MonomialMatrix& op, const FixedSpace& fs) {
    std::int64_t level = lcm64(op.level, fs.level);
    std::int64_t so = level / op.level, sf = level / fs.level;
    MonomialMatrix out;
    out.level = level;
    out.perm.assign(fs.dim(), 0);
    out.phase.assign(fs.dim(), 0);
    for (size_t c = 0; c < fs.dim(); ++c) {
        std::uint32_t r = fs.roots[c];
        std::int64_t d = fs.component[op.perm[r]];
        if (d < 0) throw Error("NotInvariant", "operator does not preserve the fixed space");
        out.perm[c] = static_cast<std::uint32_t>(d);
        out.phase[c] = mod(op.phase[r] * so - fs.phase[op.perm[r]] * sf, level);
    }
    for (std::uint32_t y = 0; y < fs.ambient_dim(); ++y) {
        auto c = fs.component[y];
        if (c < 0) continue;
        auto z = op.perm[y];
        if (fs.component[z] != static_cast<std::int64_t>(out.perm[c]) ||
            mod(fs.phase[y] * sf + op.phase[y] * so - fs.phase[z] * sf - out.phase[c], level) != 0)
            throw Error("NotInvariant", "operator does not preserve the fixed space");
    }
    return out;
}

CycMatrix restrict_dense(const CycMatrix& op, const FixedSpace& fs) {
    CycMatrix out(fs.dim(), fs.dim());
    for (size_t r = 0; r < fs.dim(); ++r)
        for (std::uint32_t y = 0; y < fs.ambient_dim(); ++y) {
            auto c = fs.component[y];
            if (c < 0 || op(fs.roots[r], y).is_zero()) continue;
            out(r, static_cast<size_t>(c)) += op(fs.roots[r], y) * Cyclotomic::zeta(fs.level, fs.phase[y]);
        }
    return out;
}

std::vector<CycMatrix> monomial_hom_space(const std::vector<MonomialMatrix>& a, const std::vector<MonomialMatrix>& b,
                                          size_t rows, size_t cols, std::int64_t level) {
    if (a.size() != b.size()) throw Error("DimensionMismatch", "generator lists differ in length");
    for (size_t i = 0; i < a.size(); ++i) level = lcm64(level, lcm64(a[i].level, b[i].level));
    PhasedUnionFind uf(rows * cols, level);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].dim() != rows || b[i].dim() != cols) throw Error("DimensionMismatch", "generator has the wrong size");
        std::int64_t sa = level / a[i].level, sb = level / b[i].level;
        for (size_t r = 0; r < rows; ++r)
            for (size_t c = 0; c < cols; ++c)
                uf.relate(static_cast<std::uint32_t>(r * cols + c),
                          static_cast<std::uint32_t>(a[i].perm[r] * cols + b[i].perm[c]),
                          a[i].phase[r] * sa - b[i].phase[c] * sb);
    }
    std::vector<CycMatrix> basis;
    std::vector<std::int64_t> index(rows * cols, -1), base_phase(rows * cols, 0);
    for (std::uint32_t x = 0; x < rows * cols; ++x) {
        auto [r, ph] = uf.find(x);
        if (uf.dead[r]) continue;
        if (index[r] < 0) {
            index[r] = static_cast<std::int64_t>(basis.size());
            base_phase[r] = ph;
            basis.emplace_back(rows, cols);
        }
        basis[static_cast<size_t>(index[r])](x / cols, x % cols) = Cyclotomic::zeta(level, ph - base_phase[r]);
    }
    return basis;
}

FpVec FiberedSum::plus(size_t i) const {
    FpVec v(star.dim(), 0);
    v[i] = 1;
    return v;
}

FpVec FiberedSum::minus(size_t i) const {
    FpVec v(star.dim(), 0);
    v[half() + i] = 1;
    return v;
}

std::vector<FpVec> FiberedSum::w1() const {
    std::vector<FpVec> out;
    for (size_t i = 0; i < k; ++i) out.push_back(plus(i));
    return out;
}

std::vector<FpVec> FiberedSum::w0() const {
    std::vector<FpVec> out;
    for (size_t i = k; i < k + m; ++i) out.push_back(plus(i));
    for (size_t i = k; i < k + m; ++i) out.push_back(minus(i));
    return out;
}

std::vector<FpVec> FiberedSum::gw1() const {
    std::vector<FpVec> out;
    for (size_t i = k + m; i < half(); ++i) out.push_back(plus(i));
    return out;
}

bool FiberedSum::in_w(const FpVec& w) const {
    for (size_t i = k + m; i < half(); ++i)
        if (w[i] || w[half() + i]) return false;
    return true;
}

bool FiberedSum::in_gw(const FpVec& w) const {
    for (size_t i = 0; i < k; ++i)
        if (w[i] || w[half() + i]) return false;
    return true;
}

FiberedSum build_fibered_sum(std::int64_t p, size_t dim_w13, size_t dim_w0) {
    if (dim_w13 % 2 || dim_w0 % 2)
        throw Error("OddDimension", "symplectic pieces must have even dimension",
                    {{"dim_W13", std::to_string(dim_w13)}, {"dim_W0", std::to_string(dim_w0)}});
    if (dim_w13 == 0 && dim_w0 == 0) throw Error("EmptyConfiguration", "both pieces are zero");
    FiberedSum fs;
    fs.p = p;
    fs.k = dim_w13 / 2;
    fs.m = dim_w0 / 2;
    fs.star = SymplecticSpace::standard(p, 2 * fs.k + fs.m);
    return fs;
}

FiberedSumModel::FiberedSumModel(FiberedSum data)
    : data_(std::move(data)), rep_(data_.star, standard_polarization(data_.star)) {
    std::int64_t p = data_.p;
    size_t n = rep_.dim();
    std::vector<MonomialMatrix> on_w1, on_gw1;
    for (const auto& w : data_.w1()) on_w1.push_back(rep_.image(w, 0));
    for (const auto& w : data_.gw1()) on_gw1.push_back(rep_.image(w, 0));
    v_tau_ = fixed_space(n, p, on_gw1);
    v_gtau_ = fixed_space(n, p, on_w1);
    auto both = on_w1;
    both.insert(both.end(), on_gw1.begin(), on_gw1.end());
    v_tau0_ = fixed_space(n, p, both);

    for (const auto& part : {data_.w1(), data_.w0(), data_.gw1()}) k_gens_.insert(k_gens_.end(), part.begin(), part.end());
    k_gens_.push_back(FpVec(data_.dim_star(), 0));
    for (size_t i = 0; i < k_gens_.size(); ++i) {
        auto op = rep_.image(k_gens_[i], i + 1 == k_gens_.size() ? 1 : 0);
        on_tau_.push_back(restrict_to(op, v_tau_));
        on_gtau_.push_back(restrict_to(op, v_gtau_));
    }
}

std::vector<CycMatrix> FiberedSumModel::hom_space() const {
    return monomial_hom_space(on_tau_, on_gtau_, v_tau_.dim(), v_gtau_.dim(), data_.p);
}

Q FiberedSumModel::multiplicity(const FixedSpace& fs, bool over_k) const {
    std::int64_t p = data_.p;
    std::vector<FpVec> span;
    if (over_k) {
        span = data_.w1();
        auto g = data_.gw1();
        span.insert(span.end(), g.begin(), g.end());
    }
    // tau_0 extended trivially has character p^m zeta^k on W1 + gW1 + center and vanishes elsewhere
    Cyclotomic sum;
    std::uint64_t count = fp::power(p, span.size());
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        FpVec coeff = fp::unrank(idx, span.size(), p);
        FpVec w(data_.dim_star(), 0);
        for (size_t i = 0; i < span.size(); ++i)
            for (size_t j = 0; j < w.size(); ++j) w[j] = mod(w[j] + coeff[i] * span[i][j], p);
        sum += restrict_to(rep_.image(w, 0), fs).trace();
    }
    Q group_order = Q(static_cast<long>(fp::power(p, span.size() + 2 * data_.m + 1)));
    Q factor = Q(static_cast<long>(fp::power(p, data_.m + 1)));
    return sum.rational() * factor / group_order;
}

Q FiberedSumModel::multiplicity_tau_k() const { return multiplicity(v_tau_, true); }
Q FiberedSumModel::multiplicity_gtau_k() const { return multiplicity(v_gtau_, true); }
Q FiberedSumModel::multiplicity_tau_h0() const { return multiplicity(v_tau_, false); }

namespace {

std::vector<Cyclotomic> coordinates(const FixedSpace& fs, const CycMatrix& ambient, size_t col) {
    std::vector<Cyclotomic> out(fs.dim());
    for (size_t c = 0; c < fs.dim(); ++c) out[c] = ambient(fs.roots[c], col);
    return out;
}

std::vector<Cyclotomic> mat_vec(const CycMatrix& m, const std::vector<Cyclotomic>& v) {
    std::vector<Cyclotomic> out(m.rows());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero() && !v[j].is_zero()) out[i] += m(i, j) * v[j];
    return out;
}

}  // namespace

CycMatrix FiberedSumModel::intertwiner(const Cyclotomic& c) const {
    auto basis = hom_space();
    if (basis.size() != 1)
        throw TheoremViolation("intertwining space is not one-dimensional",
                               {{"p", std::to_string(data_.p)},
                                {"dim_W", std::to_string(data_.dim_w())},
                                {"dim_W0", std::to_string(data_.dim_w0())},
                                {"hom_dim", std::to_string(basis.size())}});
    const CycMatrix& x = basis[0];
    CycMatrix incl = v_tau0_.inclusion();
    auto in_g = coordinates(v_gtau_, incl, 0);
    auto in_t = coordinates(v_tau_, incl, 0);
    auto image = mat_vec(x, in_g);
    for (size_t i = 0; i < image.size(); ++i)
        if (!in_t[i].is_zero()) {
            if (image[i].is_zero()) throw TheoremViolation("intertwiner kills V_tau0");
            return x.scaled(c * in_t[i] / image[i]);
        }
    throw TheoremViolation("V_tau0 is zero");
}

FpMat FiberedSumModel::random_stabilizer_element(std::uint64_t seed) const {
    std::int64_t p = data_.p;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> digit(0, p - 1);
    auto random_invertible = [&](size_t n) {
        for (;;) {
            FpMat a(n, FpVec(n));
            for (auto& row : a)
                for (auto& x : row) x = digit(rng);
            if (n == 0 || fp::det(a, p) != 0) return a;
        }
    };
    size_t h = data_.half(), k = data_.k, m = data_.m;
    FpMat s(2 * h, FpVec(2 * h, 0));
    auto place = [&](size_t off, const FpMat& a, bool dual) {
        FpMat b = dual ? fp::transpose(fp::inverse(a, p)) : a;
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < a.size(); ++j) {
                s[off + i][off + j] = b[i][j];
            }
    };
    FpMat a = random_invertible(k), c = random_invertible(k);
    place(0, a, false);
    place(h, a, true);
    place(k + m, c, false);
    place(h + k + m, c, true);

    // Sp(W0) element as a product of transvections x -> x + t beta(v, x) v
    FpMat b = fp::identity(2 * h);
    const FpMat& j = data_.star.form();
    for (size_t step = 0; step < 2 * m + 2 && m > 0; ++step) {
        FpVec v(2 * h, 0);
        for (size_t i = k; i < k + m; ++i) {
            v[i] = digit(rng);
            v[h + i] = digit(rng);
        }
        std::int64_t t = digit(rng);
        FpVec jv = fp::apply(fp::transpose(j), v, p);  // row vector v^T J
        FpMat tr = fp::identity(2 * h);
        for (size_t r = 0; r < 2 * h; ++r)
            for (size_t q = 0; q < 2 * h; ++q) tr[r][q] = mod(tr[r][q] + t * v[r] * jv[q], p);
        b = fp::mul(tr, b, p);
    }
    for (size_t i = 0; i < 2 * h; ++i) {
        bool in_w0 = (i >= k && i < k + m) || (i >= h + k && i < h + k + m);
        if (!in_w0) continue;
        for (size_t q = 0; q < 2 * h; ++q) s[i][q] = b[i][q];
    }
    if (!data_.star.is_symplectic(s)) throw TheoremViolation("sampled stabilizer element is not symplectic");
    return s;
}

std::pair<CycMatrix, CycMatrix> FiberedSumModel::restricted_weil(const FpMat& s) const {
    size_t n = rep_.dim();
    std::vector<std::uint32_t> rows, cols;
    std::vector<bool> is_row(n, false);
    for (const auto* fs : {&v_tau_, &v_gtau_})
        for (auto r : fs->roots) is_row[r] = true;
    for (std::uint32_t y = 0; y < n; ++y) {
        if (is_row[y]) rows.push_back(y);
        if (v_tau_.component[y] >= 0 || v_gtau_.component[y] >= 0) cols.push_back(y);
    }
    for (std::uint32_t j0 = 0; j0 < n; ++j0) {
        CycMatrix sub = rep_.averaged_intertwiner(s, j0, rows, cols);
        if (sub.is_zero()) continue;
        CycMatrix full(n, n);
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t q = 0; q < cols.size(); ++q) full(rows[i], cols[q]) = sub(i, q);
        return {restrict_dense(full, v_tau_), restrict_dense(full, v_gtau_)};
    }
    throw TheoremViolation("averaged intertwiner vanishes");
}

bool IntertwiningReport::pass() const {
    std::uint64_t expect_tau = fp::power(p, dim_w / 2), expect_tau0 = fp::power(p, dim_w0 / 2);
    return hom_dim == 1 && mult_tau_k == 1 && mult_gtau_k == 1 && intertwines && acts_by_c && rank_matches &&
           scaling && equivariance_failures == 0 && dim_v_tau == expect_tau && dim_v_gtau == expect_tau &&
           dim_v_tau0 == expect_tau0;
}

IntertwiningReport run_intertwining(std::int64_t p, size_t dim_w13, size_t dim_w0, const Cyclotomic& c,
                                    std::uint64_t seed, size_t samples) {
    FiberedSumModel model(build_fibered_sum(p, dim_w13, dim_w0));
    IntertwiningReport rep;
    rep.p = p;
    rep.dim_w = model.data().dim_w();
    rep.dim_w0 = model.data().dim_w0();
    rep.dim_star = model.data().dim_star();
    rep.dim_v_star = model.star_rep().dim();
    rep.dim_v_tau = model.v_tau().dim();
    rep.dim_v_gtau = model.v_gtau().dim();
    rep.dim_v_tau0 = model.v_tau0().dim();
    rep.hom_dim = model.hom_space().size();
    rep.mult_tau_k = model.multiplicity_tau_k();
    rep.mult_gtau_k = model.multiplicity_gtau_k();
    rep.mult_tau_h0 = model.multiplicity_tau_h0();

    rep.op = model.intertwiner(c);
    const CycMatrix& x = rep.op;
    rep.intertwines = true;
    for (size_t i = 0; i < model.on_tau().size(); ++i)
        if (x * model.on_gtau()[i].dense() != model.on_tau()[i].dense() * x) rep.intertwines = false;

    CycMatrix incl = model.v_tau0().inclusion();
    rep.acts_by_c = true;
    for (size_t col = 0; col < model.v_tau0().dim(); ++col) {
        auto in_g = coordinates(model.v_gtau(), incl, col);
        auto in_t = coordinates(model.v_tau(), incl, col);
        auto image = mat_vec(x, in_g);
        for (size_t i = 0; i < image.size(); ++i)
            if (image[i] != c * in_t[i]) rep.acts_by_c = false;
    }
    rep.rank_matches = c.is_zero() ? x.is_zero() : x.rank() == model.v_tau0().dim();
    rep.scaling = model.intertwiner(Cyclotomic(1)).scaled(c) == x;

    for (size_t i = 0; i < samples; ++i) {
        FpMat s = model.random_stabilizer_element(seed + i);
        auto [on_tau, on_gtau] = model.restricted_weil(s);
        ++rep.equivariance_checked;
        if (on_tau * x != x * on_gtau) ++rep.equivariance_failures;
    }
    return rep;
}

}  // namespace tameforge
