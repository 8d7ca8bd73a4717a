#include "tameforge/rational.hpp"

#include "tameforge/errors.hpp"

#include <limits>

namespace tameforge {

std::string to_string(const Z& x) { return x.get_str(); }

std::string to_string(const Q& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Q parse_rational(const std::string& text) {
    auto valid_int = [](const std::string& s) {
        if (s.empty()) return false;
        size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto strip_plus = [](const std::string& s) { return (!s.empty() && s[0] == '+') ? s.substr(1) : s; };
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' )
        throw Error("ParseError", "malformed rational '" + text + "'");
    Q q(Z(strip_plus(num)), Z(strip_plus(den)));
    if (q.get_den() == 0) throw Error("ParseError", "zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

std::int64_t to_int64(const Z& x) {
    if (!x.fits_slong_p()) throw Error("Overflow", "integer " + x.get_str() + " exceeds 64 bits");
    return x.get_si();
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd64(a, b) * b;
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t n) {
    __int128 result = 1 % n, b = mod(base, n);
    while (exp > 0) {
        if (exp & 1) result = result * b % n;
        b = b * b % n;
        exp >>= 1;
    }
    return static_cast<std::int64_t>(result);
}

std::int64_t inv_mod(std::int64_t a, std::int64_t n) {
    std::int64_t t = 0, new_t = 1, r = n, new_r = mod(a, n);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw Error("NotInvertible", std::to_string(a) + " is not invertible mod " + std::to_string(n));
    return mod(t, n);
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

}  // namespace tameforge
