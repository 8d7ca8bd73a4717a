#include "tameforge/galois.hpp"

#include <algorithm>
#include <numeric>

namespace tameforge {

namespace {

IVec mat_vec(const IMat& m, const IVec& v) {
    IVec w(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) w[i] += m[i][j] * v[j];
    return w;
}

IMat mat_mul(const IMat& a, const IMat& b) {
    size_t n = a.size();
    IMat c(n, IVec(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

// Invariant subspace dimension of {B c : c} under the given matrices,
// subject to extra linear constraints on c.
size_t invariant_dimension(const QMat& basis_cols_rows, const std::vector<IMat>& mats, const QMat& constraints) {
    // basis_cols_rows: list of basis vectors b_k (each length n); v = sum c_k b_k
    size_t k = basis_cols_rows.size();
    if (k == 0) return 0;
    size_t n = basis_cols_rows[0].size();
    QMat system = constraints;
    for (const auto& m : mats)
        for (size_t i = 0; i < n; ++i) {
            QVec row(k, 0);
            for (size_t c = 0; c < k; ++c) {
                Q s = 0;
                for (size_t j = 0; j < n; ++j) s += Q(static_cast<long>(m[i][j])) * basis_cols_rows[c][j];
                row[c] = s - basis_cols_rows[c][i];
            }
            system.push_back(std::move(row));
        }
    return nullspace_q(system, k).size();
}

}  // namespace

GaloisAction::GaloisAction(std::shared_ptr<const RootDatum> datum, std::vector<IMat> generators,
                           std::int64_t ramification_index, size_t bound)
    : datum_(std::move(datum)), gens_(std::move(generators)), e_(ramification_index) {
    if (e_ < 1) throw Error("BadRamificationIndex", "ramification index must be positive");
    const RootDatum& d = *datum_;
    size_t n = static_cast<size_t>(d.rank());
    for (size_t g = 0; g < gens_.size(); ++g) {
        const IMat& m = gens_[g];
        if (m.size() != n || std::any_of(m.begin(), m.end(), [n](const IVec& r) { return r.size() != n; }))
            throw Error("NotAGaloisAction", "generator " + std::to_string(g) + " has wrong shape");
        QMat inv = inverse_q(to_qmat(m));
        if (inv.empty()) throw Error("NotAGaloisAction", "generator " + std::to_string(g) + " is singular");
        IMat co(n, IVec(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                const Q& x = inv[j][i];
                if (x.get_den() != 1)
                    throw Error("NotAGaloisAction", "generator " + std::to_string(g) + " is not unimodular");
                co[i][j] = x.get_num().get_si();
            }
        std::vector<std::uint32_t> perm(d.size());
        for (size_t r = 0; r < d.size(); ++r) {
            auto idx = d.find_root(mat_vec(m, d.root(r)));
            if (idx < 0)
                throw Error("NotAGaloisAction", "generator " + std::to_string(g) + " does not permute roots");
            if (mat_vec(co, d.coroot(r)) != d.coroot(static_cast<size_t>(idx)))
                throw Error("NotAGaloisAction",
                            "generator " + std::to_string(g) + " does not commute with root-coroot indexing");
            perm[r] = static_cast<std::uint32_t>(idx);
        }
        cogens_.push_back(std::move(co));
        perms_.push_back(std::move(perm));
    }
    IMat id(n, IVec(n, 0));
    for (size_t i = 0; i < n; ++i) id[i][i] = 1;
    elements_ = enumerate_closure<IMat>(gens_, id, mat_mul, bound);
}

OrbitSet compute_orbits(const GaloisAction& action) {
    const RootDatum& d = action.datum();
    size_t n = d.size();
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& perm : action.generator_perms())
        for (size_t r = 0; r < n; ++r) {
            auto a = find(static_cast<std::uint32_t>(r)), b = find(perm[r]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    OrbitSet os;
    os.orbit_of.assign(n, UINT32_MAX);
    for (size_t r = 0; r < n; ++r) {
        auto root = find(static_cast<std::uint32_t>(r));
        if (os.orbit_of[root] == UINT32_MAX) {
            os.orbit_of[root] = static_cast<std::uint32_t>(os.orbits.size());
            os.orbits.emplace_back();
        }
        os.orbit_of[r] = os.orbit_of[root];
        os.orbits[os.orbit_of[r]].push_back(static_cast<std::uint32_t>(r));
    }
    os.pair_map.resize(os.orbits.size());
    for (size_t o = 0; o < os.orbits.size(); ++o) {
        auto neg = os.orbit_of[d.negative(os.orbits[o][0])];
        for (auto r : os.orbits[o])
            ensure(os.orbit_of[d.negative(r)] == neg, "negation does not map orbits to orbits");
        os.pair_map[o] = neg;
    }
    os.pair_of.assign(n, UINT32_MAX);
    for (size_t o = 0; o < os.orbits.size(); ++o) {
        if (os.pair_of[os.orbits[o][0]] != UINT32_MAX) continue;
        RootSet pair = os.orbits[o];
        if (os.pair_map[o] != o) {
            const auto& other = os.orbits[os.pair_map[o]];
            pair.insert(pair.end(), other.begin(), other.end());
        }
        std::sort(pair.begin(), pair.end());
        for (auto r : pair) os.pair_of[r] = static_cast<std::uint32_t>(os.pairs.size());
        os.pairs.push_back(std::move(pair));
    }
    return os;
}

bool is_galois_stable(const GaloisAction& action, const RootSet& subset) {
    std::vector<bool> in(action.datum().size(), false);
    for (auto r : subset) in.at(r) = true;
    for (const auto& perm : action.generator_perms())
        for (auto r : subset)
            if (!in[perm[r]]) return false;
    return true;
}

EllipticityReport ellipticity_report(const GaloisAction& action, const RootSet& levi) {
    const RootDatum& d = action.datum();
    if (!is_levi_subsystem(d, levi)) throw Error("NotLevi", "subset is not a Levi subsystem");
    if (!is_galois_stable(action, levi)) throw Error("LeviNotGaloisStable", "Levi subsystem is not Gamma-stable");
    size_t n = static_cast<size_t>(d.rank());
    QMat coroots = to_qmat(d.coroots());
    auto pivots = rref(coroots);
    coroots.resize(pivots.size());  // basis of Q Phi^vee
    EllipticityReport rep;
    rep.coroot_invariant_dim = invariant_dimension(coroots, action.coroot_generators(), {});
    QMat constraints;
    for (auto r : levi) {
        QVec row(coroots.size(), 0);
        for (size_t c = 0; c < coroots.size(); ++c) {
            Q s = 0;
            for (size_t j = 0; j < n; ++j) s += Q(static_cast<long>(d.root(r)[j])) * coroots[c][j];
            row[c] = s;
        }
        constraints.push_back(std::move(row));
    }
    rep.annihilator_invariant_dim = invariant_dimension(coroots, action.coroot_generators(), constraints);
    rep.T_elliptic_in_G = rep.coroot_invariant_dim == 0;
    rep.ZH_mod_ZG_anisotropic = rep.annihilator_invariant_dim == 0;
    return rep;
}

bool on_depth_grid(const Q& r, std::int64_t e) {
    Z den = r.get_den();
    return Z(static_cast<long>(e)) % den == 0;
}

}  // namespace tameforge
