#pragma once

#include "tameforge/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tameforge {

/// Exact element of Q(zeta_N), stored in the power basis 1, z, ..., z^{phi(N)-1}
/// reduced modulo the N-th cyclotomic polynomial. Zero has no coefficients.
class Cyclotomic {
public:
    Cyclotomic() = default;
    Cyclotomic(const Q& value);
    Cyclotomic(long value) : Cyclotomic(Q(value)) {}

    static Cyclotomic zeta(std::int64_t level, std::int64_t k);
    /// sum_j counts[j] * zeta_level^j
    static Cyclotomic from_exponent_counts(std::int64_t level, const std::vector<std::int64_t>& counts);

    std::int64_t level() const { return level_; }
    const std::vector<Q>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_rational() const;
    /// Throws Error("NotRational") unless is_rational().
    Q rational() const;

    /// Same value written at a level divisible by the current one.
    Cyclotomic at_level(std::int64_t level) const;

    Cyclotomic conj() const;
    Cyclotomic inverse() const;

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic operator-() const;

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    /// Exponent j in [0, order) with *this == zeta_order^j, if any.
    std::optional<std::int64_t> root_of_unity_exponent(std::int64_t order) const;

    std::string to_string() const;

private:
    Cyclotomic(std::int64_t level, std::vector<Q> c);
    void normalize();

    std::int64_t level_ = 1;
    std::vector<Q> c_;
};

std::int64_t euler_phi(std::int64_t n);
/// Integer coefficients of the n-th cyclotomic polynomial, low to high.
std::vector<std::int64_t> cyclotomic_polynomial(std::int64_t n);

}  // namespace tameforge
