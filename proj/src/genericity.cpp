#include "tameforge/genericity.hpp"

#include <algorithm>

namespace tameforge {

FiniteField::Elem evaluate_on_coroot(const RootDatum& datum, const ResidueFunctional& f, std::uint32_t root) {
    const FiniteField& F = *f.field;
    FiniteField::Elem s = 0;
    for (int k = 0; k < datum.rank(); ++k) s = F.add(s, F.mul(f.coords[k], F.from_int(datum.coroot(root)[k])));
    return s;
}

AssembledFunctional assemble_residue_functional(const RootDatum& datum, const RootSet& phi_i, const RootSet& phi_ip1,
                                                const Prescription& prescribed, const FieldPtr& field, const Q& depth,
                                                const OrbitSet* orbits) {
    if (!field) throw Error("FieldCharacteristicZero", "a finite field is required");
    const FiniteField& F = *field;
    size_t n = static_cast<size_t>(datum.rank());
    for (const auto& [root, value] : prescribed) {
        if (root >= datum.size()) throw Error("IndexOutOfRange", "prescribed root out of range");
        if (value == 0)
            throw Error("ZeroValue", "prescribed value is zero", {{"root", std::to_string(root)}});
        if (std::binary_search(phi_i.begin(), phi_i.end(), root))
            throw Error("InconsistentPrescription", "prescription on a root of Phi^i", {{"root", std::to_string(root)}});
    }
    if (orbits) {
        for (const auto& pair : orbits->pairs) {
            bool in_next = std::includes(phi_ip1.begin(), phi_ip1.end(), pair.begin(), pair.end());
            bool in_cur = std::binary_search(phi_i.begin(), phi_i.end(), pair[0]);
            if (!in_next || in_cur) continue;
            bool covered = std::any_of(prescribed.begin(), prescribed.end(), [&](const auto& pr) {
                return std::binary_search(pair.begin(), pair.end(), pr.first);
            });
            if (!covered)
                throw Error("MissingResidueData", "jumping orbit-pair without a prescribed value",
                            {{"root", std::to_string(pair[0])}});
        }
    }
    // rows: [coroot | rhs]
    std::vector<std::vector<FiniteField::Elem>> rows;
    auto add_row = [&](std::uint32_t root, FiniteField::Elem rhs) {
        std::vector<FiniteField::Elem> row(n + 1);
        for (size_t k = 0; k < n; ++k) row[k] = F.from_int(datum.coroot(root)[k]);
        row[n] = rhs;
        rows.push_back(std::move(row));
    };
    for (auto r : phi_i) add_row(r, 0);
    for (const auto& [root, value] : prescribed) add_row(root, value);

    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < n && r < rows.size(); ++c) {
        size_t piv = rows.size();
        for (size_t i = r; i < rows.size(); ++i)
            if (rows[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        auto inv = F.inv(rows[r][c]);
        for (auto& x : rows[r]) x = F.mul(x, inv);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            auto f = rows[i][c];
            for (size_t j = 0; j <= n; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    for (size_t i = r; i < rows.size(); ++i)
        if (rows[i][n] != 0) throw Error("InconsistentPrescription", "prescribed values are not linearly consistent");

    AssembledFunctional out;
    out.functional.field = field;
    out.functional.depth = depth;
    out.functional.coords.assign(n, 0);
    for (size_t k = 0; k < pivots.size(); ++k) out.functional.coords[pivots[k]] = rows[k][n];
    out.free_dimension = n - pivots.size();
    for (auto root : phi_ip1) out.values.emplace_back(root, evaluate_on_coroot(datum, out.functional, root));
    return out;
}

GeReport ge_check(const RootDatum& datum, const RootSet& phi_i, const RootSet& phi_ip1, const ResidueFunctional& f,
                  bool doubling_check) {
    if (!std::includes(phi_ip1.begin(), phi_ip1.end(), phi_i.begin(), phi_i.end()))
        throw Error("NotNested", "Phi^i is not contained in Phi^{i+1}");
    if (!is_levi_subsystem(datum, phi_i) || !is_levi_subsystem(datum, phi_ip1))
        throw Error("NotLevi", "GE checks need Levi subsystems");
    if (f.coords.size() != static_cast<size_t>(datum.rank()))
        throw Error("DimensionMismatch", "functional has wrong number of coordinates");
    GeReport rep;
    rep.ge1 = true;
    for (auto a : phi_ip1) {
        bool in_cur = std::binary_search(phi_i.begin(), phi_i.end(), a);
        auto v = evaluate_on_coroot(datum, f, a);
        if (v == 0) rep.zero_set.push_back(a);
        if (in_cur && v != 0)
            throw Error("InconsistentFunctional", "functional is nonzero on a coroot of Phi^i",
                        {{"root", std::to_string(a)}});
        if (!in_cur && v == 0) rep.ge1 = false;
    }
    if (rep.ge1) ensure(rep.zero_set == phi_i, "zero set of a GE1 functional differs from Phi^i");

    auto stab = weyl_stabilizer_order(datum, phi_ip1, f.coords, f.field);
    rep.stabilizer_order = stab.stabilizer_order;
    rep.orbit_size = stab.orbit_size;
    rep.expected_order = weyl_group_order(datum, phi_i);
    ensure(rep.stabilizer_order % rep.expected_order == 0 && rep.stabilizer_order >= rep.expected_order,
           "W(Phi^i) is not contained in the stabilizer",
           {{"stabilizer", std::to_string(rep.stabilizer_order)}, {"expected", std::to_string(rep.expected_order)}});
    rep.ge2 = rep.stabilizer_order == rep.expected_order;

    if (doubling_check) {
        auto big = get_field(f.field->characteristic(), 2 * f.field->degree());
        FieldEmbedding emb(f.field, big);
        std::vector<FiniteField::Elem> lifted;
        for (auto x : f.coords) lifted.push_back(emb(x));
        auto stab2 = weyl_stabilizer_order(datum, phi_ip1, lifted, big);
        rep.doubling_agrees = stab2.stabilizer_order == stab.stabilizer_order;
    }
    return rep;
}

PermissibilityReport permissibility_report(const CharacterData& data, std::int64_t p, int m, bool require_ge) {
    const RootDatum& datum = data.action->datum();
    PermissibilityReport rep;
    rep.torsion = torsion_report(datum, p);
    rep.tower = recover_tower(data);
    Z pz(static_cast<long>(p));
    rep.pi1_G = fundamental_group_order(datum);
    rep.pi1_H = fundamental_group_order(datum, data.levi_H);
    rep.pi1_divisibility = rep.pi1_H % pz == 0;
    rep.pi1_G_divisible = rep.pi1_G % pz == 0;

    if (rep.tower.d == 0) {
        rep.ge_status = "trivial";
        return rep;
    }
    if (data.residues.empty()) {
        if (rep.torsion.condition4_required || require_ge)
            throw Error("MissingResidueData", "genericity must be checked but no residue values were given");
        rep.ge_status = "not_required";
        return rep;
    }
    int field_m = m;
    for (const auto& r : data.residues) {
        if (r.p != p) throw Error("FieldMismatch", "residue field characteristic differs from p",
                                  {{"residue_p", std::to_string(r.p)}, {"p", std::to_string(p)}});
        field_m = std::max(field_m, r.m);
    }
    auto field = get_field(p, field_m);
    for (size_t i = 0; i < rep.tower.d; ++i) {
        const RootSet& lo = rep.tower.subsystems[i];
        const RootSet& hi = rep.tower.subsystems[i + 1];
        Prescription pres;
        for (const auto& r : data.residues) {
            if (!std::binary_search(hi.begin(), hi.end(), r.root) || std::binary_search(lo.begin(), lo.end(), r.root))
                continue;
            auto value = r.value;
            if (r.m != field_m) value = FieldEmbedding(get_field(p, r.m), field)(value);
            pres.emplace_back(r.root, value);
        }
        LevelGenericity lg;
        lg.level = i;
        lg.functional = assemble_residue_functional(datum, lo, hi, pres, field, rep.tower.depths[i], &data.orbits);
        lg.report = ge_check(datum, lo, hi, lg.functional.functional);
        rep.passes = rep.passes && lg.report.ge1 && lg.report.ge2;
        rep.levels.push_back(std::move(lg));
    }
    rep.ge_status = "checked";
    return rep;
}

}  // namespace tameforge
