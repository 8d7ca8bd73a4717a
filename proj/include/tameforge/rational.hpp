#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace tameforge {

using Z = mpz_class;
using Q = mpq_class;

/// "p/q" for non-integers, "p" for integers.
std::string to_string(const Q& x);
std::string to_string(const Z& x);

/// Parses "p/q" or "p"; throws Error("ParseError") on malformed input.
Q parse_rational(const std::string& text);

std::int64_t to_int64(const Z& x);

/// gcd/lcm on non-negative machine integers.
std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

/// Mathematical modulus, result in [0, n).
inline std::int64_t mod(std::int64_t a, std::int64_t n) {
    std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t n);
std::int64_t inv_mod(std::int64_t a, std::int64_t n);
bool is_prime(std::int64_t n);

/// Prime factorization as (prime, exponent) pairs, ascending.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

}  // namespace tameforge
