#include "tameforge/distinction.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tameforge {

FMat apply_involution(const MatrixGroup& g, const Involution& theta, const FMat& x) {
    const auto& f = g.field();
    size_t n = g.n();
    FMat y = theta.outer ? fmat::transpose(fmat::inverse(f, x, n), n) : x;
    return fmat::mul(f, fmat::mul(f, theta.t, y, n), fmat::inverse(f, theta.t, n), n);
}

FMat lie_involution(const MatrixGroup& g, const Involution& theta, const FMat& x) {
    const auto& f = g.field();
    size_t n = g.n();
    FMat y = x;
    if (theta.outer) {
        y = fmat::transpose(x, n);
        for (auto& e : y) e = f.neg(e);
    }
    return fmat::mul(f, fmat::mul(f, theta.t, y, n), fmat::inverse(f, theta.t, n), n);
}

Involution act(const MatrixGroup& g, const FMat& h, const Involution& theta) {
    const auto& f = g.field();
    size_t n = g.n();
    FMat right = theta.outer ? fmat::transpose(h, n) : fmat::inverse(f, h, n);
    return {fmat::mul(f, fmat::mul(f, h, theta.t, n), right, n), theta.outer};
}

std::vector<FMat> involution_key(const MatrixGroup& g, const Involution& theta) {
    std::vector<FMat> key;
    for (const auto& x : g.generators()) key.push_back(apply_involution(g, theta, x));
    return key;
}

void validate_involution(const MatrixGroup& g, const Involution& theta) {
    size_t n = g.n();
    if (theta.t.size() != n * n || fmat::det(g.field(), theta.t, n) == 0)
        throw Error("NotAnInvolution", "involution matrix is not invertible of the right size");
    bool moves = false;
    for (const auto& x : g.generators()) {
        FMat y = apply_involution(g, theta, x);
        if (!g.contains(y)) throw Error("NotAnInvolution", "involution does not preserve the group");
        if (apply_involution(g, theta, y) != x) throw Error("NotAnInvolution", "automorphism does not square to the identity");
        if (y != x) moves = true;
    }
    if (!moves) throw Error("NotAnInvolution", "automorphism is the identity");
}

std::vector<Involution> default_seeds(const MatrixGroup& g) {
    const auto& f = g.field();
    size_t n = g.n();
    std::vector<Involution> seeds;
    for (const auto& t : g.elements()) {
        if (!fmat::is_scalar(t, n) && fmat::is_scalar(fmat::mul(f, t, t, n), n)) seeds.push_back({t, false});
        FMat tt = fmat::transpose(t, n), neg = t;
        for (auto& e : neg) e = f.neg(e);
        if (tt == t || tt == neg) seeds.push_back({t, true});
    }
    return seeds;
}

std::vector<InvolutionOrbit> involution_orbits(const MatrixGroup& g, const std::vector<Involution>& seeds) {
    std::vector<InvolutionOrbit> orbits;
    std::set<std::vector<FMat>> seen;
    for (const auto& s : seeds) {
        validate_involution(g, s);
        if (seen.count(involution_key(g, s))) continue;
        InvolutionOrbit orbit;
        std::set<std::vector<FMat>> local;
        orbit.members.push_back(s);
        local.insert(involution_key(g, s));
        for (const auto& h : g.elements()) {
            Involution th = act(g, h, s);
            if (local.insert(involution_key(g, th)).second) orbit.members.push_back(th);
        }
        seen.insert(local.begin(), local.end());
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

std::vector<std::uint32_t> fixed_points(const MatrixGroup& g, const Involution& theta) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < g.order(); ++i)
        if (apply_involution(g, theta, g.element(i)) == g.element(i)) out.push_back(i);
    return out;
}

std::vector<std::uint32_t> stabilizer(const MatrixGroup& g, const Involution& theta) {
    auto key = involution_key(g, theta);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < g.order(); ++i)
        if (involution_key(g, act(g, g.element(i), theta)) == key) out.push_back(i);
    return out;
}

Gl2Data build_gl2(std::int64_t q, size_t bound) {
    auto fac = factorize(q);
    if (q < 2 || fac.size() != 1) throw Error("NotPrimePower", "q must be a prime power", {{"q", std::to_string(q)}});
    std::int64_t p = fac[0].first;
    int m = static_cast<int>(fac[0].second);
    if (p == 2) throw Error("EvenCharacteristic", "q must be odd", {{"q", std::to_string(q)}});
    auto small = get_field(p, m);
    auto big = get_field(p, 2 * m);
    FieldEmbedding emb(small, big);
    const auto& fb = *big;
    auto gamma = fb.generator();
    auto gq = fb.pow(gamma, q);
    auto c1 = emb.preimage(fb.neg(fb.add(gamma, gq)));
    auto c0 = emb.preimage(fb.mul(gamma, gq));
    const auto& f = *small;
    FMat c{f.zero(), f.neg(c0), f.one(), f.neg(c1)};

    Gl2Data d{q, MatrixGroup::general_linear(small, 2, bound), {}, {}};
    d.torus_exponent.assign(d.group.order(), -1);
    FMat x = fmat::identity(f, 2);
    std::int64_t order = q * q - 1;
    for (std::int64_t j = 0; j < order; ++j) {
        auto idx = d.group.index_of(x);
        if (d.torus_exponent[idx] >= 0) throw TheoremViolation("companion matrix does not have order q^2-1");
        d.torus.push_back(idx);
        d.torus_exponent[idx] = j;
        x = d.group.mul(x, c);
    }
    if (x != fmat::identity(f, 2)) throw TheoremViolation("companion matrix does not have order q^2-1");
    return d;
}

std::vector<std::int64_t> cuspidal_parameters(std::int64_t q) {
    std::int64_t n = q * q - 1;
    std::vector<std::int64_t> out;
    std::vector<bool> used(static_cast<size_t>(n), false);
    for (std::int64_t k = 0; k < n; ++k) {
        if (used[static_cast<size_t>(k)] || mod(k * q - k, n) == 0) continue;
        used[static_cast<size_t>(k)] = used[static_cast<size_t>(mod(k * q, n))] = true;
        out.push_back(k);
    }
    return out;
}

Cyclotomic torus_character(const Gl2Data& d, std::int64_t k, std::uint32_t element) {
    auto j = d.torus_exponent[element];
    if (j < 0) throw Error("NotInTorus", "element is not in the torus");
    return Cyclotomic::zeta(d.torus_order(), k * j);
}

std::vector<Cyclotomic> cuspidal_character(const Gl2Data& d, std::int64_t k) {
    std::int64_t q = d.q, n = d.torus_order();
    if (mod(k * q - k, n) == 0)
        throw Error("NotGeneralPosition", "torus character equals its Frobenius conjugate",
                    {{"q", std::to_string(q)}, {"k", std::to_string(k)}});
    const auto& g = d.group;
    const auto& f = g.field();
    std::map<std::pair<FiniteField::Elem, FiniteField::Elem>, std::vector<std::uint32_t>> by_invariants;
    for (auto l : d.torus) {
        const auto& m = g.element(l);
        by_invariants[{fmat::trace(f, m, 2), fmat::det(f, m, 2)}].push_back(l);
    }
    auto two_inv = f.inv(f.from_int(2));
    std::vector<Cyclotomic> chi(g.order());
    for (std::uint32_t i = 0; i < g.order(); ++i) {
        const auto& m = g.element(i);
        auto tr = fmat::trace(f, m, 2), det = fmat::det(f, m, 2);
        auto disc = f.sub(f.mul(tr, tr), f.mul(f.from_int(4), det));
        if (fmat::is_scalar(m, 2)) {
            chi[i] = torus_character(d, k, i) * Cyclotomic(q - 1);
        } else if (disc == f.zero()) {
            auto a = f.mul(tr, two_inv);
            chi[i] = -torus_character(d, k, g.index_of({a, f.zero(), f.zero(), a}));
        } else if (f.is_square(disc)) {
            chi[i] = Cyclotomic();
        } else {
            Cyclotomic s;
            for (auto l : by_invariants.at({tr, det})) s += torus_character(d, k, l);
            chi[i] = -s;
        }
    }
    return chi;
}

namespace {

// Reduced row echelon basis of the row span; pivots returned per row.
std::vector<FMat> rref_rows(const FiniteField& f, std::vector<FMat> rows, std::vector<size_t>& pivots) {
    pivots.clear();
    size_t cols = rows.empty() ? 0 : rows[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows.size(); ++c) {
        size_t piv = rows.size();
        for (size_t i = r; i < rows.size(); ++i)
            if (rows[i][c]) {
                piv = i;
                break;
            }
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        auto s = f.inv(rows[r][c]);
        for (auto& x : rows[r]) x = f.mul(x, s);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || !rows[i][c]) continue;
            auto x = rows[i][c];
            for (size_t j = 0; j < cols; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(x, rows[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return rows;
}

// Basis of {x : x M = 0} for a square matrix acting on row vectors.
std::vector<FMat> left_kernel(const FiniteField& f, const std::vector<FMat>& m) {
    size_t n = m.size();
    // solve M^T x^T = 0 via rref of M^T
    std::vector<FMat> mt(n, FMat(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) mt[j][i] = m[i][j];
    std::vector<size_t> piv;
    auto r = rref_rows(f, mt, piv);
    std::vector<bool> is_piv(n, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<FMat> basis;
    for (size_t free = 0; free < n; ++free) {
        if (is_piv[free]) continue;
        FMat v(n, f.zero());
        v[free] = f.one();
        for (size_t i = 0; i < r.size(); ++i) v[piv[i]] = f.neg(r[i][free]);
        basis.push_back(v);
    }
    return basis;
}

}  // namespace

std::vector<int> epsilon_character(const MatrixGroup& g, const Involution& theta, const std::vector<std::uint32_t>& l_fixed) {
    const auto& f = g.field();
    size_t n = g.n(), nn = n * n;
    // rows: image of each unit matrix under d(theta) - 1
    std::vector<FMat> m(nn, FMat(nn));
    for (size_t e = 0; e < nn; ++e) {
        FMat unit(nn, f.zero());
        unit[e] = f.one();
        FMat img = lie_involution(g, theta, unit);
        for (size_t j = 0; j < nn; ++j) m[e][j] = f.sub(img[j], unit[j]);
    }
    std::vector<size_t> piv;
    auto basis = rref_rows(f, left_kernel(f, m), piv);
    size_t b = basis.size();
    std::vector<int> out;
    for (auto h : l_fixed) {
        const FMat& hm = g.element(h);
        FMat hinv = g.inv(hm);
        if (apply_involution(g, theta, hm) != hm) throw Error("NotFixed", "element is not theta-fixed");
        FMat ad(b * b, f.zero());
        for (size_t j = 0; j < b; ++j) {
            FMat img = fmat::mul(f, fmat::mul(f, hm, basis[j], n), hinv, n);
            for (size_t i = 0; i < b; ++i) ad[i * b + j] = img[piv[i]];
        }
        auto det = b ? fmat::det(f, ad, b) : f.one();
        if (det == f.one())
            out.push_back(1);
        else if (det == f.neg(f.one()))
            out.push_back(-1);
        else
            throw TheoremViolation("epsilon character takes a value other than +-1");
    }
    return out;
}

Q invariant_dimension(const MatrixGroup& g, const Involution& theta, const std::vector<Cyclotomic>& chi) {
    auto fixed = fixed_points(g, theta);
    Cyclotomic s;
    for (auto x : fixed) s += chi[x];
    return s.rational() / static_cast<long>(fixed.size());
}

TheoremReport theorem_sides(const Gl2Data& d, const InvolutionOrbit& orbit, size_t orbit_id, std::int64_t k, bool inject) {
    const auto& g = d.group;
    TheoremReport rep;
    rep.q = d.q;
    rep.orbit_id = orbit_id;
    rep.orbit_size = orbit.members.size();
    rep.rho_param = k;
    auto chi = cuspidal_character(d, k);
    rep.fixed_order = fixed_points(g, orbit.members[0]).size();
    rep.lhs = invariant_dimension(g, orbit.members[0], chi);

    std::vector<bool> in_l(g.order(), false);
    for (auto l : d.torus) in_l[l] = true;
    const FMat& gen = g.element(d.torus[1 % d.torus.size()]);
    std::set<std::vector<FMat>> seen;
    Q rhs = 0;
    for (const auto& th : orbit.members) {
        if (!in_l[g.index_of(apply_involution(g, th, gen))]) continue;
        if (seen.count(involution_key(g, th))) continue;
        LOrbitTerm term;
        term.rep = th;
        std::set<std::vector<FMat>> lorbit;
        for (auto l : d.torus) lorbit.insert(involution_key(g, act(g, g.element(l), th)));
        term.l_orbit_size = lorbit.size();
        seen.insert(lorbit.begin(), lorbit.end());

        std::vector<std::uint32_t> l_fixed;
        for (auto l : d.torus)
            if (apply_involution(g, th, g.element(l)) == g.element(l)) l_fixed.push_back(l);
        term.l_fixed_order = l_fixed.size();
        auto eps = epsilon_character(g, th, l_fixed);
        Cyclotomic pair;
        for (size_t i = 0; i < l_fixed.size(); ++i) pair += torus_character(d, k, l_fixed[i]) * Cyclotomic(eps[i]);
        term.pairing = pair.rational() / static_cast<long>(l_fixed.size());
        term.selected = term.pairing != 0;

        auto stab = stabilizer(g, th);
        auto fixed = fixed_points(g, th);
        term.stabilizer_order = stab.size();
        std::vector<FMat> stab_l;
        for (auto s : stab)
            if (in_l[s]) stab_l.push_back(g.element(s));
        std::set<FMat> prod;
        for (auto a : fixed)
            for (const auto& b : stab_l) prod.insert(g.mul(g.element(a), b));
        term.m_l = Q(static_cast<long>(stab.size())) / static_cast<long>(prod.size());
        rhs += term.m_l * term.pairing;
        rep.terms.push_back(std::move(term));
    }
    if (inject) rhs += 1;
    rep.rhs = rhs;
    if (!rep.equal())
        throw TheoremViolation("distinction multiplicity formula fails",
                               {{"q", std::to_string(d.q)},
                                {"orbit", std::to_string(orbit_id)},
                                {"rho_param", std::to_string(k)},
                                {"lhs", to_string(rep.lhs)},
                                {"rhs", to_string(rep.rhs)}});
    return rep;
}

std::vector<TheoremReport> run_distinction(std::int64_t q, bool inject, size_t bound) {
    Gl2Data d = build_gl2(q, bound);
    auto orbits = involution_orbits(d.group, default_seeds(d.group));
    std::vector<TheoremReport> out;
    for (size_t o = 0; o < orbits.size(); ++o)
        for (auto k : cuspidal_parameters(q)) out.push_back(theorem_sides(d, orbits[o], o, k, inject));
    return out;
}

std::vector<Cyclotomic> frobenius_induce(const FiniteGroup& g, const std::vector<std::uint32_t>& k,
                                         const std::vector<Cyclotomic>& chi_on_k) {
    if (!g.is_subgroup(k)) throw Error("NotASubgroup", "inducing set is not a subgroup");
    if (chi_on_k.size() != k.size()) throw Error("DimensionMismatch", "one value per subgroup element required");
    std::vector<std::int64_t> pos(g.order(), -1);
    for (size_t i = 0; i < k.size(); ++i) pos[k[i]] = static_cast<std::int64_t>(i);
    std::vector<Cyclotomic> out(g.order());
    for (std::uint32_t x = 0; x < g.order(); ++x) {
        Cyclotomic s;
        for (std::uint32_t h = 0; h < g.order(); ++h) {
            auto y = pos[g.conj(h, x)];
            if (y >= 0 && !chi_on_k[static_cast<size_t>(y)].is_zero()) s += chi_on_k[static_cast<size_t>(y)];
        }
        out[x] = s * Cyclotomic(Q(1, static_cast<long>(k.size())));
    }
    return out;
}

std::vector<Cyclotomic> frobenius_induce_extended(const FiniteGroup& g, const std::vector<std::uint32_t>& k,
                                                  const std::vector<Cyclotomic>& chi) {
    if (chi.size() != g.order()) throw Error("DimensionMismatch", "one value per group element required");
    std::vector<bool> in_k(g.order(), false);
    for (auto x : k) in_k[x] = true;
    for (std::uint32_t x = 0; x < g.order(); ++x)
        if (!in_k[x] && !chi[x].is_zero()) throw Error("SupportNotInK", "function is nonzero outside the subgroup");
    std::vector<Cyclotomic> on_k;
    for (auto x : k) on_k.push_back(chi[x]);
    return frobenius_induce(g, k, on_k);
}

}  // namespace tameforge
