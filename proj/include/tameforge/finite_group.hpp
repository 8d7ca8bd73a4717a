#pragma once

#include "tameforge/cyclotomic.hpp"
#include "tameforge/errors.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace tameforge {

/// Default bound on enumerated group sizes.
constexpr size_t kDefaultElementBound = 10000;

/// Breadth-first closure of `gens` under `mul`; the identity comes first.
/// Throws Error("ClosureBoundExceeded") past `bound` elements.
template <class T, class Mul>
std::vector<T> enumerate_closure(const std::vector<T>& gens, const T& identity, Mul mul, size_t bound) {
    std::vector<T> elems{identity};
    std::map<T, size_t> seen{{identity, 0}};
    for (size_t i = 0; i < elems.size(); ++i) {
        for (const auto& g : gens) {
            T x = mul(elems[i], g);
            if (seen.count(x)) continue;
            if (elems.size() >= bound)
                throw Error("ClosureBoundExceeded", "group closure exceeds " + std::to_string(bound) + " elements",
                            {{"bound", std::to_string(bound)}});
            seen.emplace(x, elems.size());
            elems.push_back(x);
        }
    }
    return elems;
}

/// Finite group given by its Cayley table on indices 0..n-1.
class FiniteGroup {
public:
    FiniteGroup() = default;
    FiniteGroup(size_t n, std::vector<std::uint32_t> table);

    /// Builds the Cayley table from an element list closed under `mul`.
    template <class T, class Mul>
    static FiniteGroup from_elements(const std::vector<T>& elems, Mul mul) {
        std::map<T, std::uint32_t> index;
        for (size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], static_cast<std::uint32_t>(i));
        std::vector<std::uint32_t> table(elems.size() * elems.size());
        for (size_t i = 0; i < elems.size(); ++i)
            for (size_t j = 0; j < elems.size(); ++j) {
                auto it = index.find(mul(elems[i], elems[j]));
                if (it == index.end()) throw Error("NotAGroup", "element list is not closed under multiplication");
                table[i * elems.size() + j] = it->second;
            }
        return FiniteGroup(elems.size(), std::move(table));
    }

    size_t order() const { return n_; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table_[static_cast<size_t>(a) * n_ + b]; }
    std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }
    std::uint32_t identity() const { return id_; }
    std::uint32_t conj(std::uint32_t g, std::uint32_t x) const { return mul(mul(g, x), inv(g)); }
    std::uint32_t element_order(std::uint32_t a) const;
    std::int64_t exponent() const;

    const std::vector<std::vector<std::uint32_t>>& classes() const { return classes_; }
    std::uint32_t class_of(std::uint32_t a) const { return class_of_[a]; }

    bool is_subgroup(const std::vector<std::uint32_t>& subset) const;
    std::vector<std::uint32_t> closure(const std::vector<std::uint32_t>& gens) const;
    /// Left coset representatives t_i with G = union t_i K, in increasing index order.
    std::vector<std::uint32_t> left_coset_reps(const std::vector<std::uint32_t>& subgroup) const;

private:
    size_t n_ = 0;
    std::vector<std::uint32_t> table_, inv_;
    std::uint32_t id_ = 0;
    std::vector<std::vector<std::uint32_t>> classes_;
    std::vector<std::uint32_t> class_of_;
};

/// Class function: one value per conjugacy class, with class sizes.
/// `owner` identifies the group so mismatched pairings are rejected.
struct ClassFunction {
    const void* owner = nullptr;
    std::vector<std::uint64_t> class_sizes;
    std::vector<Cyclotomic> values;

    std::uint64_t group_order() const;
    /// Per-element values constant on the given classes; throws NotAClassFunction otherwise.
    static ClassFunction from_elements(const void* owner, const std::vector<std::vector<std::uint32_t>>& classes,
                                       const std::vector<Cyclotomic>& element_values);
};

/// (1/|G|) sum_x f(x) conj(g(x)).
Cyclotomic character_pairing(const ClassFunction& f, const ClassFunction& g);

}  // namespace tameforge
