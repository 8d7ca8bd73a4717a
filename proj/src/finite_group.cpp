#include "tameforge/finite_group.hpp"

#include "tameforge/rational.hpp"

#include <algorithm>

namespace tameforge {

FiniteGroup::FiniteGroup(size_t n, std::vector<std::uint32_t> table) : n_(n), table_(std::move(table)) {
    if (table_.size() != n * n) throw Error("NotAGroup", "Cayley table has wrong size");
    bool found = false;
    for (std::uint32_t e = 0; e < n_ && !found; ++e) {
        bool ok = true;
        for (std::uint32_t x = 0; x < n_ && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
        if (ok) {
            id_ = e;
            found = true;
        }
    }
    if (!found) throw Error("NotAGroup", "no identity element");
    inv_.assign(n_, 0);
    for (std::uint32_t a = 0; a < n_; ++a) {
        bool ok = false;
        for (std::uint32_t b = 0; b < n_; ++b)
            if (mul(a, b) == id_) {
                inv_[a] = b;
                ok = true;
                break;
            }
        if (!ok) throw Error("NotAGroup", "element without inverse");
    }
    class_of_.assign(n_, UINT32_MAX);
    for (std::uint32_t a = 0; a < n_; ++a) {
        if (class_of_[a] != UINT32_MAX) continue;
        std::vector<std::uint32_t> cls;
        auto id = static_cast<std::uint32_t>(classes_.size());
        for (std::uint32_t g = 0; g < n_; ++g) {
            auto c = conj(g, a);
            if (class_of_[c] == UINT32_MAX) {
                class_of_[c] = id;
                cls.push_back(c);
            }
        }
        std::sort(cls.begin(), cls.end());
        classes_.push_back(std::move(cls));
    }
}

std::uint32_t FiniteGroup::element_order(std::uint32_t a) const {
    std::uint32_t k = 1, x = a;
    while (x != id_) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

std::int64_t FiniteGroup::exponent() const {
    std::int64_t e = 1;
    for (const auto& cls : classes_) e = lcm64(e, element_order(cls[0]));
    return e;
}

bool FiniteGroup::is_subgroup(const std::vector<std::uint32_t>& subset) const {
    if (subset.empty()) return false;
    std::vector<bool> in(n_, false);
    for (auto x : subset) {
        if (x >= n_) return false;
        in[x] = true;
    }
    if (!in[id_]) return false;
    for (auto x : subset) {
        if (!in[inv_[x]]) return false;
        for (auto y : subset)
            if (!in[mul(x, y)]) return false;
    }
    return true;
}

std::vector<std::uint32_t> FiniteGroup::closure(const std::vector<std::uint32_t>& gens) const {
    std::vector<bool> in(n_, false);
    std::vector<std::uint32_t> elems{id_};
    in[id_] = true;
    for (size_t i = 0; i < elems.size(); ++i)
        for (auto g : gens) {
            auto x = mul(elems[i], g);
            if (!in[x]) {
                in[x] = true;
                elems.push_back(x);
            }
        }
    std::sort(elems.begin(), elems.end());
    return elems;
}

std::vector<std::uint32_t> FiniteGroup::left_coset_reps(const std::vector<std::uint32_t>& subgroup) const {
    std::vector<bool> covered(n_, false);
    std::vector<std::uint32_t> reps;
    for (std::uint32_t g = 0; g < n_; ++g) {
        if (covered[g]) continue;
        reps.push_back(g);
        for (auto k : subgroup) covered[mul(g, k)] = true;
    }
    return reps;
}

std::uint64_t ClassFunction::group_order() const {
    std::uint64_t n = 0;
    for (auto s : class_sizes) n += s;
    return n;
}

ClassFunction ClassFunction::from_elements(const void* owner, const std::vector<std::vector<std::uint32_t>>& classes,
                                           const std::vector<Cyclotomic>& element_values) {
    ClassFunction f;
    f.owner = owner;
    for (const auto& cls : classes) {
        const Cyclotomic& v = element_values.at(cls[0]);
        for (auto x : cls)
            if (element_values.at(x) != v)
                throw Error("NotAClassFunction", "values differ inside a conjugacy class");
        f.class_sizes.push_back(cls.size());
        f.values.push_back(v);
    }
    return f;
}

Cyclotomic character_pairing(const ClassFunction& f, const ClassFunction& g) {
    if (f.owner != g.owner || f.class_sizes != g.class_sizes)
        throw Error("GroupMismatch", "class functions live on different groups");
    Cyclotomic acc;
    for (size_t c = 0; c < f.values.size(); ++c) {
        if (f.values[c].is_zero() || g.values[c].is_zero()) continue;
        acc += f.values[c] * g.values[c].conj() * Cyclotomic(Q(static_cast<long>(f.class_sizes[c])));
    }
    return acc * Cyclotomic(Q(1, static_cast<unsigned long>(f.group_order())));
}

}  // namespace tameforge
