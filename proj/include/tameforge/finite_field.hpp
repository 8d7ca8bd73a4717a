#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace tameforge {

/// GF(p^m) with elements encoded as integers in [0, q): the base-p digits
/// are the coefficients of the polynomial representative (constant first).
/// Multiplication goes through exp/log tables of a primitive element.
class FiniteField {
public:
    using Elem = std::uint32_t;

    FiniteField(std::int64_t p, int m);

    std::int64_t characteristic() const { return p_; }
    int degree() const { return m_; }
    std::uint32_t order() const { return q_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(std::int64_t v) const;

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::int64_t e) const;

    /// Primitive element (the class of x in the defining quotient).
    Elem generator() const { return exp_[1 % (q_ - 1)]; }
    Elem exp(std::int64_t k) const;
    /// Discrete log base generator(); a must be nonzero.
    std::uint32_t log(Elem a) const;
    bool is_square(Elem a) const;

    /// Monic defining polynomial, coefficients low to high (length m+1).
    const std::vector<std::int64_t>& modulus() const { return modulus_; }
    std::vector<std::int64_t> digits(Elem a) const;
    Elem from_digits(const std::vector<std::int64_t>& d) const;
    std::string name() const;

private:
    std::int64_t p_;
    int m_;
    std::uint32_t q_;
    std::vector<std::int64_t> modulus_;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> add_cache_;  // only filled for small fields
};

using FieldPtr = std::shared_ptr<const FiniteField>;

/// Shared, cached field instances (construction searches for a primitive polynomial).
FieldPtr get_field(std::int64_t p, int m);

/// Embedding small -> big where degree(small) divides degree(big).
class FieldEmbedding {
public:
    FieldEmbedding(FieldPtr small, FieldPtr big);
    FiniteField::Elem operator()(FiniteField::Elem a) const { return table_[a]; }
    /// Preimage of an element of the image; throws if absent.
    FiniteField::Elem preimage(FiniteField::Elem b) const;

private:
    FieldPtr small_, big_;
    std::vector<FiniteField::Elem> table_;
};

}  // namespace tameforge
