#include "doctest.h"

#include "tameforge/errors.hpp"
#include "tameforge/heisenberg.hpp"
#include "tameforge/weil.hpp"

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

std::vector<FpMat> sl2_generators(std::int64_t p) { return {{{1, 1}, {0, 1}}, {{0, p - 1}, {1, 0}}}; }

FiniteGroup group_of(const WeilExtension& ext, std::int64_t p) {
    return FiniteGroup::from_elements(ext.elements, [p](const FpMat& a, const FpMat& b) { return fp::mul(a, b, p); });
}

std::vector<std::uint32_t> all_indices(size_t n) {
    std::vector<std::uint32_t> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = static_cast<std::uint32_t>(i);
    return v;
}

// |trace omega(s)|^2 = p^{dim ker(s - 1)} for the Weil representation.
void check_trace_norms(const HeisenbergRep& rep, const WeilExtension& ext) {
    std::int64_t p = rep.p();
    size_t dim = rep.space().dim();
    for (size_t i = 0; i < ext.elements.size(); ++i) {
        FpMat m = ext.elements[i];
        for (size_t k = 0; k < dim; ++k) m[k][k] = (m[k][k] + p - 1) % p;
        size_t ker = dim - fp::rank(m, p);
        auto tr = ext.omega[i].trace();
        CHECK((tr * tr.conj()) == Cyclotomic(static_cast<long>(fp::power(p, ker))));
    }
}

}  // namespace

TEST_CASE("symplectic spaces") {
    auto sp = SymplecticSpace::standard(5, 2);
    CHECK(sp.dim() == 4);
    CHECK(sp.size() == 625);
    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t) {
        FpVec u(4), v(4);
        for (auto& x : u) x = static_cast<std::int64_t>(rng() % 5);
        for (auto& x : v) x = static_cast<std::int64_t>(rng() % 5);
        CHECK(sp.beta(u, u) == 0);
        CHECK((sp.beta(u, v) + sp.beta(v, u)) % 5 == 0);
    }
    CHECK(error_code([] { SymplecticSpace(2, {{0, 1}, {1, 0}}); }) == "EvenPrime");
    CHECK(error_code([] { SymplecticSpace(3, {{0}}); }) == "OddDimension");
    CHECK(error_code([] { SymplecticSpace(3, {{1, 1}, {-1, 0}}); }) == "NotSymplectic");
    CHECK(error_code([] { SymplecticSpace(3, {{0, 0}, {0, 0}}); }) == "NotSymplectic");
    CHECK(sp.is_symplectic(fp::identity(4)));
    CHECK_FALSE(sp.is_symplectic({{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
}

TEST_CASE("Heisenberg group law") {
    for (std::int64_t p : {3, 5}) {
        HeisenbergGroup h(SymplecticSpace::standard(p, 1));
        CHECK(h.order() == static_cast<std::uint64_t>(p * p * p));
        const auto& g = h.group();
        CHECK(g.order() == h.order());
        // center is {(0, k)}: p classes of size 1
        size_t singletons = 0;
        for (const auto& c : g.classes()) singletons += c.size() == 1;
        CHECK(singletons == static_cast<size_t>(p));
        CHECK(g.classes().size() == static_cast<size_t>(p * p + p - 1));
        // commutator of (w1,0), (w2,0) is (0, beta(w1, w2))
        for (std::int64_t a = 0; a < p; ++a)
            for (std::int64_t b = 0; b < p; ++b) {
                FpVec w1{a, b}, w2{b, (a + 1) % p};
                auto x = h.index(w1, 0), y = h.index(w2, 0);
                auto comm = g.mul(g.mul(x, y), g.mul(g.inv(x), g.inv(y)));
                CHECK(comm == h.index({0, 0}, h.space().beta(w1, w2)));
            }
        for (std::uint32_t i = 0; i < g.order(); ++i) {
            auto [w, k] = h.element(i);
            CHECK(h.index(w, k) == i);
        }
    }
}

TEST_CASE("Heisenberg representation for p = 3, n = 1") {
    auto sp = SymplecticSpace::standard(3, 1);
    HeisenbergGroup h(sp);
    HeisenbergRep rep(sp, standard_polarization(sp));
    CHECK(rep.dim() == 3);
    auto central = rep.image({0, 0}, 1).dense();
    CHECK(central == CycMatrix::scalar(3, Cyclotomic::zeta(3, 1)));
    auto lin = rep.linear_rep(h);
    CHECK(lin.is_multiplicative());
    auto cf = lin.class_function();
    CHECK(character_pairing(cf, cf) == Cyclotomic(1));
    auto chi = rep.character(h);
    for (std::uint32_t i = 0; i < h.order(); ++i) {
        auto [w, k] = h.element(i);
        bool zero_w = w == FpVec{0, 0};
        CHECK(chi[i] == (zero_w ? Cyclotomic(3) * Cyclotomic::zeta(3, k) : Cyclotomic()));
        CHECK(chi[i] == lin.images[i].trace());
    }
}

TEST_CASE("Heisenberg representation is irreducible with the right character") {
    for (auto [p, n] : std::vector<std::pair<std::int64_t, size_t>>{{5, 1}, {3, 2}, {7, 1}}) {
        CAPTURE(p);
        auto sp = SymplecticSpace::standard(p, n);
        HeisenbergGroup h(sp);
        HeisenbergRep rep(sp, standard_polarization(sp));
        CHECK(rep.dim() == fp::power(p, n));
        auto chi = rep.character(h);
        auto cf = ClassFunction::from_elements(&h.group(), h.group().classes(), chi);
        CHECK(character_pairing(cf, cf) == Cyclotomic(1));
        for (std::uint32_t i = 0; i < h.order(); ++i) {
            auto [w, k] = h.element(i);
            bool zero_w = std::all_of(w.begin(), w.end(), [](std::int64_t x) { return x == 0; });
            CHECK(chi[i] == (zero_w ? Cyclotomic(static_cast<long>(rep.dim())) * Cyclotomic::zeta(p, k)
                                    : Cyclotomic()));
        }
    }
}

TEST_CASE("polarization choice does not change the representation") {
    auto sp = SymplecticSpace::standard(3, 1);
    HeisenbergGroup h(sp);
    HeisenbergRep a(sp, standard_polarization(sp));
    HeisenbergRep b(sp, Polarization{{{1, 1}}, {{0, 1}}});
    HeisenbergRep c(sp, Polarization{{{0, 1}}, {{1, 0}}});
    CHECK(a.character(h) == b.character(h));
    CHECK(a.character(h) == c.character(h));
    CHECK(b.linear_rep(h).is_multiplicative());

    auto sp2 = SymplecticSpace::standard(3, 2);
    HeisenbergGroup h2(sp2);
    HeisenbergRep d(sp2, standard_polarization(sp2));
    HeisenbergRep e(sp2, Polarization{{{1, 0, 0, 0}, {0, 0, 0, 1}}, {{0, 0, 1, 0}, {0, 1, 0, 0}}});
    CHECK(d.character(h2) == e.character(h2));

    CHECK(error_code([&] { HeisenbergRep(sp, Polarization{{{1, 0}}, {{2, 0}}}); }) == "NotAPolarization");
    CHECK(error_code([&] { HeisenbergRep(sp2, Polarization{{{1, 0, 0, 0}, {0, 0, 1, 0}}, {{0, 1, 0, 0}, {0, 0, 0, 1}}}); }) ==
          "NotAPolarization");
}

TEST_CASE("induction") {
    auto sp = SymplecticSpace::standard(3, 1);
    HeisenbergGroup h(sp);
    const auto& g = h.group();
    HeisenbergRep rep(sp, standard_polarization(sp));

    // from W+ x mu_p with character 1 x id
    std::vector<std::uint32_t> sub;
    for (std::int64_t a = 0; a < 3; ++a)
        for (std::int64_t k = 0; k < 3; ++k) sub.push_back(h.index({a, 0}, k));
    std::sort(sub.begin(), sub.end());
    std::vector<CycMatrix> imgs;
    for (auto x : sub) imgs.push_back(CycMatrix::scalar(1, Cyclotomic::zeta(3, h.element(x).second)));
    auto ind = induce_rep(g, sub, imgs);
    CHECK(ind.dim == 3);
    CHECK(ind.is_multiplicative());
    CHECK(ind.character() == rep.character(h));

    // regular representation
    auto reg = induce_rep(g, {g.identity()}, {CycMatrix::identity(1)});
    CHECK(reg.dim == 27);
    auto chi = reg.character();
    for (std::uint32_t i = 0; i < g.order(); ++i) CHECK(chi[i] == Cyclotomic(i == g.identity() ? 27 : 0));

    // from the whole group
    auto lin = rep.linear_rep(h);
    auto same = induce_rep(g, all_indices(g.order()), lin.images);
    CHECK(same.images == lin.images);

    // from the center: one copy of the Heisenberg representation per coset of W+
    std::vector<std::uint32_t> center;
    for (std::int64_t k = 0; k < 3; ++k) center.push_back(h.index({0, 0}, k));
    std::sort(center.begin(), center.end());
    std::vector<CycMatrix> cimgs;
    for (auto x : center) cimgs.push_back(CycMatrix::scalar(1, Cyclotomic::zeta(3, h.element(x).second)));
    auto direct = induce_rep(g, center, cimgs);
    CHECK(direct.dim == 9);
    auto chi_direct = direct.character();
    // three copies of the Heisenberg character
    auto chi_h = rep.character(h);
    for (std::uint32_t i = 0; i < g.order(); ++i) CHECK(chi_direct[i] == Cyclotomic(3) * chi_h[i]);

    CHECK(error_code([&] { induce_rep(g, {g.identity(), h.index({1, 0}, 0)}, {CycMatrix::identity(1), CycMatrix::identity(1)}); }) ==
          "NotASubgroup");
    std::vector<CycMatrix> bad(sub.size(), CycMatrix::scalar(1, Cyclotomic::zeta(3, 1)));
    CHECK(error_code([&] { induce_rep(g, sub, bad); }) == "NotARepresentation");
}

TEST_CASE("Weil extension for SL2(F_3)") {
    auto sp = SymplecticSpace::standard(3, 1);
    HeisenbergRep rep(sp, standard_polarization(sp));
    auto ext = weil_extend(rep, sl2_generators(3));
    CHECK(ext.elements.size() == 24);
    CHECK(ext.ambiguous);
    CHECK(ext.canonical_lift_stand_in);
    auto check = verify_weil(rep, ext);
    CHECK(check.all_pairs);
    CHECK(check.pass());

    // independent dense checks
    for (size_t i = 0; i < ext.elements.size(); ++i) {
        const auto& s = ext.elements[i];
        for (std::int64_t a = 0; a < 3; ++a)
            for (std::int64_t b = 0; b < 3; ++b) {
                FpVec w{a, b};
                auto lhs = ext.omega[i] * rep.image(w, 0).dense();
                auto rhs = rep.image(fp::apply(s, w, 3), 0).dense() * ext.omega[i];
                CHECK(lhs == rhs);
            }
        for (size_t j = 0; j < ext.elements.size(); ++j) {
            auto k = ext.index_of(fp::mul(ext.elements[i], ext.elements[j], 3));
            CHECK(ext.omega[i] * ext.omega[j] == ext.omega[k]);
        }
    }
    check_trace_norms(rep, ext);

    // dimensions 1 + 2
    auto g = group_of(ext, 3);
    LinearRep lin{&g, ext.omega, 3};
    auto cf = lin.class_function();
    CHECK(character_pairing(cf, cf) == Cyclotomic(2));

    // generator order does not matter
    auto rev = weil_extend(rep, {sl2_generators(3)[1], sl2_generators(3)[0]});
    CHECK(same_extension(ext, rev));
}

TEST_CASE("Weil extension for SL2(F_5)") {
    auto sp = SymplecticSpace::standard(5, 1);
    HeisenbergRep rep(sp, standard_polarization(sp));
    auto ext = weil_extend(rep, sl2_generators(5));
    CHECK(ext.elements.size() == 120);
    CHECK(ext.candidates == 1);
    CHECK(ext.det_one);
    CHECK_FALSE(ext.ambiguous);
    CHECK(verify_weil(rep, ext, 16).pass());
    for (const auto& m : ext.omega) CHECK(m.determinant() == Cyclotomic(1));
    std::mt19937_64 rng(4);
    for (int t = 0; t < 100; ++t) {
        size_t i = rng() % 120, j = rng() % 120;
        auto k = ext.index_of(fp::mul(ext.elements[i], ext.elements[j], 5));
        CHECK(ext.omega[i] * ext.omega[j] == ext.omega[k]);
    }
    check_trace_norms(rep, ext);
    auto g = group_of(ext, 5);
    LinearRep lin{&g, ext.omega, 5};
    auto cf = lin.class_function();
    CHECK(character_pairing(cf, cf) == Cyclotomic(2));
}

TEST_CASE("Weil extension on a four-dimensional space") {
    auto sp = SymplecticSpace::standard(3, 2);
    HeisenbergRep rep(sp, standard_polarization(sp));
    std::vector<FpMat> gens = {{{1, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
                               {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}};
    auto ext = weil_extend(rep, gens);
    CHECK(ext.elements.size() == 18);
    CHECK(ext.det_one);
    CHECK_FALSE(ext.canonical_lift_stand_in);
    CHECK(verify_weil(rep, ext).pass());
    check_trace_norms(rep, ext);
}

TEST_CASE("Weil extension errors") {
    auto sp = SymplecticSpace::standard(3, 1);
    HeisenbergRep rep(sp, standard_polarization(sp));
    CHECK(error_code([&] { weil_extend(rep, {{{2, 0}, {0, 1}}}); }) == "NotSymplectic");
    CHECK(error_code([&] { weil_extend(rep, sl2_generators(3), 10); }) == "ClosureBoundExceeded");
    auto ext = weil_extend(rep, {{{1, 1}, {0, 1}}});
    CHECK(ext.elements.size() == 3);
    CHECK(error_code([&] { ext.index_of({{0, 2}, {1, 0}}); }) == "NotInGroup");
}
