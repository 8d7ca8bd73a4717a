#include "doctest.h"

#include "tameforge/distinction.hpp"
#include "tameforge/errors.hpp"
#include "tameforge/heisenberg.hpp"

#include <functional>
#include <random>

using namespace tameforge;

namespace {

std::string error_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

Cyclotomic pairing(const MatrixGroup& g, const std::vector<Cyclotomic>& a, const std::vector<Cyclotomic>& b) {
    return character_pairing(g.class_function(a), g.class_function(b));
}

size_t orbit_containing(const MatrixGroup& g, const std::vector<InvolutionOrbit>& orbits, const Involution& theta) {
    auto key = involution_key(g, theta);
    for (size_t o = 0; o < orbits.size(); ++o)
        for (const auto& m : orbits[o].members)
            if (involution_key(g, m) == key) return o;
    FAIL("involution not found in any orbit");
    return 0;
}

std::vector<std::uint32_t> upper_triangular(const MatrixGroup& g) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < g.order(); ++i)
        if (g.element(i)[2] == 0) out.push_back(i);
    return out;
}

}  // namespace

TEST_CASE("GL2 substrates") {
    auto d3 = build_gl2(3);
    CHECK(d3.group.order() == 48);
    CHECK(d3.group.classes().size() == 8);
    CHECK(d3.torus.size() == 8);
    auto d5 = build_gl2(5);
    CHECK(d5.group.order() == 480);
    CHECK(d5.group.classes().size() == 24);
    CHECK(error_code([] { build_gl2(6); }) == "NotPrimePower");
    CHECK(error_code([] { build_gl2(4); }) == "EvenCharacteristic");
    CHECK(error_code([] { build_gl2(7, 100); }) != "");
    // associativity spot check and inverses
    const auto& g = d3.group;
    std::mt19937_64 rng(8);
    for (int t = 0; t < 100; ++t) {
        const auto &a = g.element(rng() % 48), &b = g.element(rng() % 48), &c = g.element(rng() % 48);
        CHECK(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
        CHECK(g.mul(a, g.inv(a)) == fmat::identity(g.field(), 2));
    }
}

TEST_CASE("cuspidal characters") {
    CHECK(cuspidal_parameters(3) == std::vector<std::int64_t>{1, 2, 5});
    CHECK(cuspidal_parameters(5) == std::vector<std::int64_t>{1, 2, 3, 4, 7, 8, 9, 13, 14, 19});
    for (std::int64_t q : {3, 5}) {
        auto d = build_gl2(q);
        const auto& g = d.group;
        auto params = cuspidal_parameters(q);
        std::vector<std::vector<Cyclotomic>> chars;
        for (auto k : params) chars.push_back(cuspidal_character(d, k));
        auto id = g.index_of(fmat::identity(g.field(), 2));
        for (size_t i = 0; i < params.size(); ++i) {
            CHECK(chars[i][id] == Cyclotomic(q - 1));
            for (size_t j = 0; j < params.size(); ++j)
                CHECK(pairing(g, chars[i], chars[j]) == Cyclotomic(i == j ? 1 : 0));
            // the upper unipotent radical sees no invariants
            Cyclotomic s;
            for (std::int64_t x = 0; x < q; ++x)
                s += chars[i][g.index_of({g.field().one(), static_cast<FiniteField::Elem>(x), 0, g.field().one()})];
            CHECK(s.is_zero());
        }
        // the Frobenius conjugate parameter gives the same character
        CHECK(cuspidal_character(d, (params[0] * q) % (q * q - 1)) == chars[0]);
        CHECK(error_code([&] { cuspidal_character(d, 0); }) == "NotGeneralPosition");
        CHECK(error_code([&] { cuspidal_character(d, q + 1); }) == "NotGeneralPosition");
    }
}

TEST_CASE("involutions and their orbits") {
    auto d = build_gl2(3);
    const auto& g = d.group;
    const auto& f = g.field();
    Involution diag{{1, 0, 0, f.from_int(-1)}, false};
    validate_involution(g, diag);
    auto fixed = fixed_points(g, diag);
    CHECK(fixed.size() == 4);
    for (auto i : fixed) {
        CHECK(g.element(i)[1] == 0);
        CHECK(g.element(i)[2] == 0);
    }
    auto stab = stabilizer(g, diag);
    for (auto i : fixed) CHECK(std::binary_search(stab.begin(), stab.end(), i));

    auto orbits = involution_orbits(g, default_seeds(g));
    std::vector<size_t> sizes;
    for (const auto& o : orbits) sizes.push_back(o.members.size());
    CHECK(sizes == std::vector<size_t>{3, 6, 6, 3, 1});
    // h.theta lies in the orbit of theta
    auto o = orbit_containing(g, orbits, diag);
    for (std::uint32_t h = 0; h < g.order(); h += 5) CHECK(orbit_containing(g, orbits, act(g, g.element(h), diag)) == o);
    // orbits are disjoint
    for (size_t a = 0; a < orbits.size(); ++a)
        for (size_t b = a + 1; b < orbits.size(); ++b)
            for (const auto& m : orbits[a].members)
                for (const auto& n : orbits[b].members) CHECK(involution_key(g, m) != involution_key(g, n));
    for (const auto& orb : orbits)
        for (const auto& th : orb.members) {
            auto fx = fixed_points(g, th), st = stabilizer(g, th);
            CHECK(std::includes(st.begin(), st.end(), fx.begin(), fx.end()));
            CHECK(g.order() % st.size() == 0);
            CHECK(g.order() / st.size() == orb.members.size());
        }

    CHECK(error_code([&] { validate_involution(g, Involution{fmat::identity(f, 2), false}); }) == "NotAnInvolution");
    CHECK(error_code([&] { validate_involution(g, Involution{{1, 1, 0, 1}, false}); }) == "NotAnInvolution");
    CHECK(error_code([&] { validate_involution(g, Involution{{1, 0}, false}); }) == "NotAnInvolution");

    auto d5 = build_gl2(5);
    auto orbits5 = involution_orbits(d5.group, default_seeds(d5.group));
    std::vector<size_t> sizes5;
    for (const auto& o5 : orbits5) sizes5.push_back(o5.members.size());
    CHECK(sizes5 == std::vector<size_t>{15, 10, 15, 10, 1});
}

TEST_CASE("epsilon character") {
    auto d = build_gl2(3);
    const auto& g = d.group;
    const auto& f = g.field();
    Involution diag{{1, 0, 0, f.from_int(-1)}, false};
    std::vector<std::uint32_t> torus;
    for (std::uint32_t i = 0; i < g.order(); ++i)
        if (g.element(i)[1] == 0 && g.element(i)[2] == 0) torus.push_back(i);
    auto eps = epsilon_character(g, diag, torus);
    for (auto e : eps) CHECK(e == 1);
    for (const auto& orb : involution_orbits(g, default_seeds(g)))
        for (const auto& th : orb.members) {
            std::vector<std::uint32_t> central;
            for (std::uint32_t i = 0; i < g.order(); ++i)
                if (fmat::is_scalar(g.element(i), 2)) central.push_back(i);
            for (auto e : epsilon_character(g, th, central)) CHECK(e == 1);
            auto fx = fixed_points(g, th);
            auto all = epsilon_character(g, th, fx);
            for (size_t a = 0; a < fx.size(); ++a) {
                CHECK((all[a] == 1 || all[a] == -1));
                for (size_t b = 0; b < fx.size(); ++b) {
                    auto ab = g.index_of(g.mul(g.element(fx[a]), g.element(fx[b])));
                    auto pos = std::lower_bound(fx.begin(), fx.end(), ab) - fx.begin();
                    CHECK(all[static_cast<size_t>(pos)] == all[a] * all[b]);
                }
            }
        }
}

TEST_CASE("anchor values for the diagonal involution") {
    auto d = build_gl2(3);
    const auto& g = d.group;
    Involution diag{{1, 0, 0, g.field().from_int(-1)}, false};
    auto orbits = involution_orbits(g, default_seeds(g));
    auto o = orbit_containing(g, orbits, diag);
    auto k2 = theorem_sides(d, orbits[o], o, 2);
    CHECK(k2.fixed_order == 4);
    CHECK(k2.lhs == Q(1));
    CHECK(k2.rhs == Q(1));
    auto k1 = theorem_sides(d, orbits[o], o, 1);
    CHECK(k1.lhs == Q(0));
    CHECK(k1.rhs == Q(0));
    CHECK(invariant_dimension(g, diag, cuspidal_character(d, 2)) == Q(1));
    try {
        theorem_sides(d, orbits[o], o, 2, true);
        FAIL("expected a violation");
    } catch (const TheoremViolation& e) {
        bool has_lhs = false;
        for (const auto& [key, value] : e.details()) has_lhs = has_lhs || key == "lhs";
        CHECK(has_lhs);
    }
}

TEST_CASE("both sides agree for q = 3 and q = 5") {
    auto r3 = run_distinction(3);
    CHECK(r3.size() == 15);
    for (const auto& r : r3) CHECK(r.equal());
    auto r5 = run_distinction(5);
    CHECK(r5.size() == 50);
    for (const auto& r : r5) {
        CHECK(r.equal());
        CHECK(r.lhs >= 0);
    }
    CHECK_THROWS_AS(run_distinction(3, true), TheoremViolation);
}

TEST_CASE("swap involution on G x G reduces to the character pairing") {
    auto d = build_gl2(3);
    const auto& g = d.group;
    const auto& f = g.field();
    auto id2 = fmat::identity(f, 2);
    std::vector<FMat> gens;
    for (const auto& x : g.generators()) {
        gens.push_back(fmat::block_diag(x, 2, id2, 2));
        gens.push_back(fmat::block_diag(id2, 2, x, 2));
    }
    MatrixGroup gg(g.field_ptr(), 4, gens);
    CHECK(gg.order() == 48 * 48);
    FMat swap(16, 0);
    swap[0 * 4 + 2] = swap[1 * 4 + 3] = swap[2 * 4 + 0] = swap[3 * 4 + 1] = 1;
    Involution theta{swap, false};
    validate_involution(gg, theta);
    CHECK(fixed_points(gg, theta).size() == 48);

    auto block = [&](const FMat& x, size_t off) {
        return FMat{x[off * 4 + off], x[off * 4 + off + 1], x[(off + 1) * 4 + off], x[(off + 1) * 4 + off + 1]};
    };
    auto params = cuspidal_parameters(3);
    std::vector<std::vector<Cyclotomic>> chars;
    for (auto k : params) chars.push_back(cuspidal_character(d, k));
    for (size_t i = 0; i < chars.size(); ++i)
        for (size_t j = 0; j < chars.size(); ++j) {
            std::vector<Cyclotomic> tensor(gg.order());
            for (std::uint32_t x = 0; x < gg.order(); ++x) {
                auto a = g.index_of(block(gg.element(x), 0)), b = g.index_of(block(gg.element(x), 2));
                tensor[x] = chars[i][a] * chars[j][b].conj();
            }
            auto expected = pairing(g, chars[i], chars[j]).rational();
            CHECK(invariant_dimension(gg, theta, tensor) == expected);
        }
}

TEST_CASE("Frobenius formula matches induced representations") {
    auto d = build_gl2(3);
    const auto& mg = d.group;
    auto g = mg.to_finite_group();
    const auto& f = mg.field();

    std::vector<std::vector<std::uint32_t>> subgroups;
    subgroups.push_back({g.identity()});
    subgroups.push_back(upper_triangular(mg));
    std::vector<std::uint32_t> everything(g.order());
    for (std::uint32_t i = 0; i < g.order(); ++i) everything[i] = i;
    subgroups.push_back(everything);
    std::mt19937_64 rng(12);
    while (subgroups.size() < 12) {
        auto k = g.closure({static_cast<std::uint32_t>(rng() % g.order()), static_cast<std::uint32_t>(rng() % g.order())});
        std::sort(k.begin(), k.end());
        if (std::find(subgroups.begin(), subgroups.end(), k) == subgroups.end()) subgroups.push_back(k);
    }

    for (const auto& k : subgroups) {
        CAPTURE(k.size());
        REQUIRE(g.is_subgroup(k));
        for (int which = 0; which < 2; ++which) {
            std::vector<Cyclotomic> chi;
            std::vector<CycMatrix> imgs;
            for (auto x : k) {
                bool minus = which == 1 && fmat::det(f, mg.element(x), 2) != f.one();
                chi.push_back(Cyclotomic(minus ? -1 : 1));
                imgs.push_back(CycMatrix::scalar(1, chi.back()));
            }
            auto formula = frobenius_induce(g, k, chi);
            auto direct = induce_rep(g, k, imgs).character();
            CHECK(formula == direct);
            std::vector<Cyclotomic> extended(g.order());
            for (size_t i = 0; i < k.size(); ++i) extended[k[i]] = chi[i];
            CHECK(frobenius_induce_extended(g, k, extended) == formula);
        }
    }

    // Borel: permutation character of degree q + 1
    auto borel = upper_triangular(mg);
    auto perm = frobenius_induce(g, borel, std::vector<Cyclotomic>(borel.size(), Cyclotomic(1)));
    CHECK(perm[g.identity()] == Cyclotomic(4));
    // K = G is the identity operation
    auto chi = cuspidal_character(d, 1);
    CHECK(frobenius_induce(g, everything, chi) == chi);
    // trivial K gives the regular character
    auto reg = frobenius_induce(g, {g.identity()}, {Cyclotomic(1)});
    for (std::uint32_t i = 0; i < g.order(); ++i) CHECK(reg[i] == Cyclotomic(i == g.identity() ? 48 : 0));

    std::vector<Cyclotomic> leaky(g.order(), Cyclotomic(1));
    CHECK(error_code([&] { frobenius_induce_extended(g, borel, leaky); }) == "SupportNotInK");
}
