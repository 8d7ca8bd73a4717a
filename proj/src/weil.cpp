#include "tameforge/weil.hpp"

#include "tameforge/intmatrix.hpp"
#include "tameforge/rational.hpp"

#include <algorithm>
#include <set>

namespace tameforge {

std::uint32_t WeilExtension::index_of(const FpMat& s) const {
    auto it = index.find(s);
    if (it == index.end()) throw Error("NotInGroup", "matrix is not in the extended subgroup");
    return it->second;
}

CycMatrix times_monomial(const CycMatrix& m, const MonomialMatrix& t) {
    CycMatrix out(m.rows(), m.cols());
    for (size_t j = 0; j < t.dim(); ++j) {
        Cyclotomic z = Cyclotomic::zeta(t.level, t.phase[j]);
        for (size_t i = 0; i < m.rows(); ++i)
            if (!m(i, t.perm[j]).is_zero()) out(i, j) = m(i, t.perm[j]) * z;
    }
    return out;
}

CycMatrix monomial_times(const MonomialMatrix& t, const CycMatrix& m) {
    CycMatrix out(m.rows(), m.cols());
    for (size_t r = 0; r < t.dim(); ++r) {
        Cyclotomic z = Cyclotomic::zeta(t.level, t.phase[r]);
        for (size_t c = 0; c < m.cols(); ++c)
            if (!m(r, c).is_zero()) out(t.perm[r], c) = m(r, c) * z;
    }
    return out;
}

namespace {

struct Pivot {
    size_t i = 0, j = 0;
    bool found = false;
};

Pivot first_nonzero(const CycMatrix& m) {
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) return {i, j, true};
    return {};
}

std::string matrix_string(const FpMat& m) {
    std::string s = "[";
    for (size_t i = 0; i < m.size(); ++i) {
        if (i) s += ",";
        s += "[";
        for (size_t j = 0; j < m[i].size(); ++j) s += (j ? "," : "") + std::to_string(m[i][j]);
        s += "]";
    }
    return s + "]";
}

// Unitary representative of the projective intertwiner for s, entries in Q(zeta_p).
CycMatrix normalized_intertwiner(const HeisenbergRep& rep, const FpMat& s, const Cyclotomic& gauss_inv) {
    std::int64_t p = rep.p();
    for (std::uint32_t j0 = 0; j0 < rep.dim(); ++j0) {
        CycMatrix a = rep.averaged_intertwiner(s, j0);
        Pivot piv = first_nonzero(a);
        if (!piv.found) continue;
        CycMatrix aa = a * a.conj_transpose();
        Cyclotomic alpha = aa(0, 0);
        if (aa != CycMatrix::scalar(aa.rows(), alpha) || !alpha.is_rational())
            throw TheoremViolation("averaged intertwiner is not a multiple of a unitary", {{"s", matrix_string(s)}});
        Cyclotomic ratio = a(piv.i, piv.j) * a(piv.i, piv.j).conj() / alpha;
        if (!ratio.is_rational())
            throw Error("CocycleNotTrivializable", "pivot magnitude is irrational", {{"s", matrix_string(s)}});
        Q q = ratio.rational();
        Cyclotomic scale = Cyclotomic(1);
        Q power = 1;
        bool matched = false;
        for (size_t r = 0; r <= rep.space().dim(); ++r) {
            if (q * power == 1) {
                matched = true;
                break;
            }
            power *= p;
            scale *= gauss_inv;
        }
        if (!matched)
            throw Error("CocycleNotTrivializable", "pivot magnitude is not a power of 1/p",
                        {{"s", matrix_string(s)}, {"ratio", to_string(q)}});
        return a.scaled(scale / a(piv.i, piv.j));
    }
    throw TheoremViolation("averaged intertwiner vanishes for every basis vector", {{"s", matrix_string(s)}});
}

size_t matrix_order(const FpMat& s, std::int64_t p) {
    FpMat id = fp::identity(s.size()), x = s;
    size_t k = 1;
    while (x != id) {
        x = fp::mul(x, s, p);
        ++k;
    }
    return k;
}

}  // namespace

WeilExtension weil_extend(const HeisenbergRep& rep, const std::vector<FpMat>& generators, size_t bound) {
    const auto& space = rep.space();
    std::int64_t p = rep.p();
    for (const auto& g : generators)
        if (!space.is_symplectic(g)) throw Error("NotSymplectic", "generator does not preserve the form",
                                                 {{"matrix", matrix_string(g)}});

    WeilExtension ext;
    ext.generators = generators;
    for (auto& g : ext.generators)
        for (auto& row : g)
            for (auto& x : row) x = mod(x, p);
    const auto& gens = ext.generators;
    size_t k = gens.size();

    ext.elements.push_back(fp::identity(space.dim()));
    ext.index.emplace(ext.elements[0], 0);
    for (size_t i = 0; i < ext.elements.size(); ++i) {
        std::vector<std::uint32_t> row(k);
        for (size_t g = 0; g < k; ++g) {
            FpMat t = fp::mul(ext.elements[i], gens[g], p);
            auto it = ext.index.find(t);
            if (it == ext.index.end()) {
                if (ext.elements.size() >= bound)
                    throw Error("ClosureBoundExceeded", "symplectic subgroup exceeds " + std::to_string(bound) + " elements",
                                {{"bound", std::to_string(bound)}});
                it = ext.index.emplace(t, static_cast<std::uint32_t>(ext.elements.size())).first;
                ext.elements.push_back(t);
            }
            row[g] = it->second;
        }
        ext.right_mul.push_back(std::move(row));
    }
    size_t n = ext.elements.size();

    std::int64_t expo = 1;
    for (const auto& s : ext.elements) expo = lcm64(expo, static_cast<std::int64_t>(matrix_order(s, p)));
    std::int64_t big = lcm64(2 * p, expo);
    std::int64_t step = big / (2 * p);
    ext.level = big;

    std::vector<std::int64_t> squares(static_cast<size_t>(p), 0);
    for (std::int64_t x = 0; x < p; ++x) ++squares[static_cast<size_t>(mod(x * x, p))];
    Cyclotomic gauss_inv = Cyclotomic::from_exponent_counts(p, squares).inverse();

    std::vector<CycMatrix> hat(n);
    for (size_t s = 0; s < n; ++s) hat[s] = normalized_intertwiner(rep, ext.elements[s], gauss_inv);

    // f(s) as an affine function of the unknowns u_g = f(generator g): entries 0..k-1 coefficients, k constant.
    std::vector<IVec> affine(n);
    std::vector<bool> defined(n, false);
    affine[0] = IVec(k + 1, 0);
    defined[0] = true;
    std::set<std::vector<std::int64_t>> rows;  // coefficient row followed by right-hand side
    auto add_equation = [&](IVec lhs) {
        for (auto& x : lhs) x = mod(x, big);
        rows.insert(std::move(lhs));
    };
    for (size_t s = 0; s < n; ++s) {
        for (size_t g = 0; g < k; ++g) {
            std::uint32_t t = ext.right_mul[s][g];
            CycMatrix prod = hat[s] * hat[ext.right_mul[0][g]];
            Pivot piv = first_nonzero(hat[t]);
            Cyclotomic lambda = prod(piv.i, piv.j) / hat[t](piv.i, piv.j);
            if (prod != hat[t].scaled(lambda))
                throw TheoremViolation("intertwiner defect is not scalar",
                                       {{"s", matrix_string(ext.elements[s])}, {"g", matrix_string(gens[g])}});
            auto j = lambda.root_of_unity_exponent(2 * p);
            if (!j)
                throw Error("CocycleNotTrivializable", "defect is not a 2p-th root of unity",
                            {{"s", matrix_string(ext.elements[s])}, {"value", lambda.to_string()}});
            std::int64_t shift = *j * step;
            if (!defined[t]) {
                affine[t] = affine[s];
                affine[t][g] += 1;
                affine[t][k] += shift;
                for (auto& x : affine[t]) x = mod(x, big);
                defined[t] = true;
                continue;
            }
            // f(s) + u_g - f(t) = -shift
            IVec eq(k + 1, 0);
            for (size_t i = 0; i < k; ++i) eq[i] = affine[s][i] - affine[t][i];
            eq[g] += 1;
            eq[k] = -shift - affine[s][k] + affine[t][k];
            add_equation(eq);
        }
    }
    for (size_t g = 0; g < k; ++g) {
        const IVec& a = affine[ext.right_mul[0][g]];
        IVec eq(k + 1, 0);
        for (size_t i = 0; i < k; ++i) eq[i] = a[i];
        eq[g] -= 1;
        eq[k] = -a[k];
        add_equation(eq);
    }
    rows.erase(IVec(k + 1, 0));

    std::vector<std::vector<std::int64_t>> solutions;
    if (k == 0) {
        solutions.push_back({});
    } else if (rows.empty()) {
        throw Error("CocycleNotTrivializable", "no constraints on generators");
    } else {
        IntMat a;
        std::vector<Z> b;
        for (const auto& r : rows) {
            std::vector<Z> coeffs(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(k));
            a.push_back(coeffs);
            b.push_back(Z(r[k]));
        }
        auto sol = solve_mod(a, b, big, 1u << 14);
        if (!sol.solvable)
            throw Error("CocycleNotTrivializable", "coboundary equations have no solution mod N",
                        {{"N", std::to_string(big)}, {"group_order", std::to_string(n)}});
        if (sol.truncated) throw Error("TooManyTrivializations", "too many trivializations to enumerate");
        solutions = sol.solutions;
    }

    auto exponents_for = [&](const std::vector<std::int64_t>& u) {
        std::vector<std::int64_t> f(n);
        for (size_t s = 0; s < n; ++s) {
            std::int64_t v = affine[s][k];
            for (size_t i = 0; i < k; ++i) v += affine[s][i] * u[i];
            f[s] = mod(v, big);
        }
        return f;
    };

    std::vector<std::int64_t> det_exp(k);
    for (size_t g = 0; g < k; ++g) {
        auto e = hat[ext.right_mul[0][g]].determinant().root_of_unity_exponent(big);
        if (!e) throw TheoremViolation("determinant of a normalized intertwiner is not a root of unity");
        det_exp[g] = *e;
    }
    auto dim = static_cast<std::int64_t>(rep.dim());
    std::vector<std::vector<std::int64_t>> candidates;
    for (const auto& u : solutions) {
        bool ok = true;
        for (size_t g = 0; g < k && ok; ++g) ok = mod(dim * u[g] + det_exp[g], big) == 0;
        if (ok) candidates.push_back(exponents_for(u));
    }
    ext.det_one = !candidates.empty();
    if (candidates.empty())
        for (const auto& u : solutions) candidates.push_back(exponents_for(u));
    ext.candidates = candidates.size();
    ext.ambiguous = candidates.size() > 1;
    ext.canonical_lift_stand_in = ext.ambiguous && p == 3 && space.dim() == 2;

    std::vector<Cyclotomic> traces(n);
    for (size_t s = 0; s < n; ++s) traces[s] = hat[s].trace();
    const std::vector<std::int64_t>* best = nullptr;
    Q best_mult;
    for (const auto& f : candidates) {
        Cyclotomic sum;
        for (size_t s = 0; s < n; ++s)
            if (!traces[s].is_zero()) sum += Cyclotomic::zeta(big, f[s]) * traces[s];
        Q mult = sum.is_rational() ? sum.rational() / static_cast<long>(n) : Q(-1);
        if (!best || mult > best_mult || (mult == best_mult && f < *best)) {
            best = &f;
            best_mult = mult;
        }
    }
    ext.exponents = *best;
    ext.omega.resize(n);
    for (size_t s = 0; s < n; ++s) ext.omega[s] = hat[s].scaled(Cyclotomic::zeta(big, ext.exponents[s]));
    return ext;
}

WeilCheck verify_weil(const HeisenbergRep& rep, const WeilExtension& ext, size_t pair_limit) {
    WeilCheck out;
    const auto& space = rep.space();
    std::int64_t p = rep.p();
    size_t n = ext.elements.size();
    std::uint64_t wsize = space.size();

    std::vector<MonomialMatrix> tau(wsize);
    std::vector<FpVec> ws(wsize);
    for (std::uint64_t i = 0; i < wsize; ++i) {
        ws[i] = fp::unrank(i, space.dim(), p);
        tau[i] = rep.image(ws[i], 0);
    }

    for (size_t s = 0; s < n; ++s) {
        const CycMatrix& om = ext.omega[s];
        for (std::uint64_t i = 0; i < wsize; ++i) {
            auto sw = fp::rank_vector(fp::apply(ext.elements[s], ws[i], p), p);
            // central elements act by scalars, so (w, 0) covers (w, k)
            ++out.covariance_checked;
            if (times_monomial(om, tau[i]) != monomial_times(tau[sw], om)) ++out.covariance_failures;
        }
    }

    out.all_pairs = n <= pair_limit;
    if (out.all_pairs) {
        for (size_t s = 0; s < n; ++s)
            for (size_t t = 0; t < n; ++t) {
                ++out.homomorphism_checked;
                auto st = ext.index.at(fp::mul(ext.elements[s], ext.elements[t], p));
                if (ext.omega[s] * ext.omega[t] != ext.omega[st]) ++out.homomorphism_failures;
            }
    } else {
        for (size_t s = 0; s < n; ++s)
            for (size_t g = 0; g < ext.generators.size(); ++g) {
                ++out.homomorphism_checked;
                if (ext.omega[s] * ext.omega[ext.right_mul[0][g]] != ext.omega[ext.right_mul[s][g]])
                    ++out.homomorphism_failures;
            }
    }

    for (size_t s = 0; s < n; ++s) {
        FpMat diff = ext.elements[s];
        for (size_t i = 0; i < diff.size(); ++i) diff[i][i] = mod(diff[i][i] - 1, p);
        bool fixed_free = fp::rank(diff, p) == space.dim();
        const CycMatrix& om = ext.omega[s];
        for (std::uint64_t i = 0; i < wsize; ++i) {
            const auto& t = tau[i];
            Cyclotomic tr;
            for (size_t j = 0; j < t.dim(); ++j)
                if (!om(j, t.perm[j]).is_zero()) tr += om(j, t.perm[j]) * Cyclotomic::zeta(p, t.phase[j]);
            if (!fp::in_column_span(diff, ws[i], p)) {
                ++out.support_checked;
                if (!tr.is_zero()) ++out.support_failures;
            } else if (i == 0 && fixed_free) {
                ++out.nonvanishing_checked;
                if (tr.is_zero()) ++out.nonvanishing_failures;
            }
        }
    }
    return out;
}

bool same_extension(const WeilExtension& a, const WeilExtension& b) {
    if (a.elements.size() != b.elements.size()) return false;
    for (size_t s = 0; s < a.elements.size(); ++s) {
        auto it = b.index.find(a.elements[s]);
        if (it == b.index.end() || a.omega[s] != b.omega[it->second]) return false;
    }
    return true;
}

}  // namespace tameforge
