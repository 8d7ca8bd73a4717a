#include "tameforge/cyclotomic.hpp"

#include "tameforge/errors.hpp"
#include "tameforge/intmatrix.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace tameforge {

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

namespace {

std::vector<std::int64_t> poly_div_exact(std::vector<std::int64_t> num, const std::vector<std::int64_t>& den) {
    // den monic
    size_t dn = den.size() - 1;
    std::vector<std::int64_t> quot(num.size() - dn, 0);
    for (size_t k = num.size(); k-- > dn;) {
        std::int64_t c = num[k];
        quot[k - dn] = c;
        for (size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
    }
    return quot;
}

struct Context {
    std::int64_t n = 1;
    std::int64_t phi = 1;
    std::vector<std::vector<std::int64_t>> power;  // zeta^j reduced, j < n
};

const Context& context(std::int64_t n) {
    static std::mutex mu;
    static std::map<std::int64_t, std::unique_ptr<Context>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
    auto ctx = std::make_unique<Context>();
    ctx->n = n;
    auto f = cyclotomic_polynomial(n);
    ctx->phi = static_cast<std::int64_t>(f.size()) - 1;
    size_t d = static_cast<size_t>(ctx->phi);
    std::vector<std::int64_t> cur(d, 0);
    cur[0] = 1;
    for (std::int64_t j = 0; j < n; ++j) {
        ctx->power.push_back(cur);
        // multiply by x and reduce
        std::int64_t top = cur[d - 1];
        for (size_t i = d - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        for (size_t i = 0; i < d; ++i) cur[i] -= top * f[i];
    }
    const Context& ref = *ctx;
    cache.emplace(n, std::move(ctx));
    return ref;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(std::int64_t n) {
    if (n < 1) throw Error("BadLevel", "cyclotomic level must be positive");
    std::vector<std::int64_t> num(static_cast<size_t>(n) + 1, 0);
    num[0] = -1;
    num[static_cast<size_t>(n)] = 1;
    for (std::int64_t d = 1; d < n; ++d)
        if (n % d == 0) num = poly_div_exact(num, cyclotomic_polynomial(d));
    return num;
}

Cyclotomic::Cyclotomic(const Q& value) {
    if (value != 0) c_.push_back(value);
}

Cyclotomic::Cyclotomic(std::int64_t level, std::vector<Q> c) : level_(level), c_(std::move(c)) { normalize(); }

void Cyclotomic::normalize() {
    for (const auto& x : c_)
        if (x != 0) return;
    c_.clear();
}

Cyclotomic Cyclotomic::zeta(std::int64_t level, std::int64_t k) {
    const Context& ctx = context(level);
    const auto& pw = ctx.power[static_cast<size_t>(mod(k, level))];
    std::vector<Q> c(pw.size());
    for (size_t i = 0; i < pw.size(); ++i) c[i] = static_cast<long>(pw[i]);
    return Cyclotomic(level, std::move(c));
}

Cyclotomic Cyclotomic::from_exponent_counts(std::int64_t level, const std::vector<std::int64_t>& counts) {
    const Context& ctx = context(level);
    std::vector<std::int64_t> acc(static_cast<size_t>(ctx.phi), 0);
    for (size_t j = 0; j < counts.size(); ++j) {
        if (!counts[j]) continue;
        const auto& pw = ctx.power[j % static_cast<size_t>(level)];
        for (size_t i = 0; i < acc.size(); ++i) acc[i] += counts[j] * pw[i];
    }
    std::vector<Q> c(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) c[i] = static_cast<long>(acc[i]);
    return Cyclotomic(level, std::move(c));
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Q Cyclotomic::rational() const {
    if (!is_rational()) throw Error("NotRational", "value " + to_string() + " is not rational");
    return c_.empty() ? Q(0) : c_[0];
}

Cyclotomic Cyclotomic::at_level(std::int64_t level) const {
    if (level == level_) return *this;
    if (level % level_ != 0) throw Error("BadLevel", "cannot promote level " + std::to_string(level_) + " to " + std::to_string(level));
    if (c_.empty()) {
        Cyclotomic z;
        z.level_ = level;
        return z;
    }
    const Context& ctx = context(level);
    std::int64_t step = level / level_;
    std::vector<Q> out(static_cast<size_t>(ctx.phi), 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        const auto& pw = ctx.power[static_cast<size_t>(i * step % level)];
        for (size_t k = 0; k < out.size(); ++k)
            if (pw[k]) out[k] += c_[i] * static_cast<long>(pw[k]);
    }
    return Cyclotomic(level, std::move(out));
}

Cyclotomic Cyclotomic::conj() const {
    if (c_.empty()) return *this;
    const Context& ctx = context(level_);
    std::vector<Q> out(static_cast<size_t>(ctx.phi), 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        const auto& pw = ctx.power[static_cast<size_t>(mod(-static_cast<std::int64_t>(i), level_))];
        for (size_t k = 0; k < out.size(); ++k)
            if (pw[k]) out[k] += c_[i] * static_cast<long>(pw[k]);
    }
    return Cyclotomic(level_, std::move(out));
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    if (o.c_.empty()) return *this;
    std::int64_t l = lcm64(level_, o.level_);
    Cyclotomic b = (o.level_ == l) ? o : o.at_level(l);
    if (c_.empty()) {
        *this = std::move(b);
        return *this;
    }
    if (l != level_) *this = at_level(l);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
    normalize();
    return *this;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    std::int64_t l = lcm64(level_, o.level_);
    if (c_.empty() || o.c_.empty()) {
        c_.clear();
        level_ = l;
        return *this;
    }
    if (c_.size() == 1 && level_ == 1) {
        Q s = c_[0];
        *this = o;
        for (auto& x : c_) x *= s;
        return *this;
    }
    if (o.c_.size() == 1 && o.level_ == 1) {
        for (auto& x : c_) x *= o.c_[0];
        return *this;
    }
    Cyclotomic a = at_level(l), b = o.at_level(l);
    const Context& ctx = context(l);
    std::vector<Q> raw(static_cast<size_t>(l), 0);
    std::vector<bool> used(static_cast<size_t>(l), false);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j] == 0) continue;
            size_t k = (i + j) % static_cast<size_t>(l);
            raw[k] += a.c_[i] * b.c_[j];
            used[k] = true;
        }
    }
    std::vector<Q> out(static_cast<size_t>(ctx.phi), 0);
    for (size_t k = 0; k < raw.size(); ++k) {
        if (!used[k] || raw[k] == 0) continue;
        const auto& pw = ctx.power[k];
        for (size_t t = 0; t < out.size(); ++t)
            if (pw[t]) out[t] += raw[k] * static_cast<long>(pw[t]);
    }
    level_ = l;
    c_ = std::move(out);
    normalize();
    return *this;
}

Cyclotomic Cyclotomic::inverse() const {
    if (c_.empty()) throw Error("DivisionByZero", "inverse of zero cyclotomic");
    if (is_rational()) return Cyclotomic(Q(1) / c_[0]);
    // solve (multiplication by *this) x = 1 in the power basis
    size_t d = c_.size();
    QMat m(d, QVec(d + 1, 0));
    for (size_t j = 0; j < d; ++j) {
        std::vector<Q> e(d, 0);
        e[j] = 1;
        Cyclotomic col = *this * Cyclotomic(level_, e);
        for (size_t i = 0; i < d && i < col.c_.size(); ++i) m[i][j] = col.c_[i];
    }
    m[0][d] = 1;
    auto piv = rref(m);
    if (piv.size() != d || piv.back() != d - 1) throw Error("DivisionByZero", "singular cyclotomic");
    std::vector<Q> x(d);
    for (size_t i = 0; i < d; ++i) x[i] = m[i][d];
    return Cyclotomic(level_, std::move(x));
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.c_.empty() || b.c_.empty()) return a.c_.empty() && b.c_.empty();
    if (a.level_ == b.level_) return a.c_ == b.c_;
    std::int64_t l = lcm64(a.level_, b.level_);
    return a.at_level(l).c_ == b.at_level(l).c_;
}

std::optional<std::int64_t> Cyclotomic::root_of_unity_exponent(std::int64_t order) const {
    if (c_.empty()) return std::nullopt;
    for (std::int64_t j = 0; j < order; ++j)
        if (*this == zeta(order, j)) return j;
    return std::nullopt;
}

std::string Cyclotomic::to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!s.empty()) s += " + ";
        s += tameforge::to_string(c_[i]);
        if (i) s += "*z" + std::to_string(level_) + "^" + std::to_string(i);
    }
    return s;
}

}  // namespace tameforge
