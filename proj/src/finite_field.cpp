#include "tameforge/finite_field.hpp"

#include "tameforge/errors.hpp"
#include "tameforge/rational.hpp"

#include <map>
#include <mutex>

namespace tameforge {

namespace {

constexpr std::uint32_t kMaxFieldOrder = 1u << 20;

// Multiply two polynomial residues (digit vectors) modulo a monic modulus.
std::vector<std::int64_t> poly_mulmod(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                                      const std::vector<std::int64_t>& f, std::int64_t p) {
    size_t m = f.size() - 1;
    std::vector<std::int64_t> prod(2 * m, 0);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (size_t k = prod.size(); k-- > m;) {
        std::int64_t c = prod[k];
        if (!c) continue;
        for (size_t i = 0; i <= m; ++i) prod[k - m + i] = mod(prod[k - m + i] - c * f[i], p);
    }
    prod.resize(m);
    return prod;
}

}  // namespace

FiniteField::FiniteField(std::int64_t p, int m) : p_(p), m_(m) {
    if (!is_prime(p)) throw Error("NotPrime", std::to_string(p) + " is not prime");
    if (m < 1) throw Error("BadDegree", "field degree must be positive");
    std::int64_t q = 1;
    for (int i = 0; i < m; ++i) {
        q *= p;
        if (q > kMaxFieldOrder) throw Error("TooLarge", "field order exceeds bound");
    }
    q_ = static_cast<std::uint32_t>(q);

    // search monic polynomials in lexicographic order for one where x has order q-1
    std::vector<std::int64_t> coeffs(m, 0);
    bool found = false;
    std::vector<Elem> powers;
    for (std::int64_t code = 0; code < q && !found; ++code) {
        std::int64_t c = code;
        for (int i = 0; i < m; ++i) {
            coeffs[i] = c % p;
            c /= p;
        }
        if (coeffs[0] == 0) continue;
        modulus_ = coeffs;
        modulus_.push_back(1);
        std::vector<std::int64_t> x(m, 0), cur(m, 0);
        if (m == 1) {
            x[0] = mod(-coeffs[0], p);
        } else {
            x[1] = 1;
        }
        cur[0] = 1;
        powers.assign(1, 1);
        for (std::int64_t k = 1; k < q; ++k) {
            cur = poly_mulmod(cur, x, modulus_, p);
            Elem e = from_digits(cur);
            if (e == 1) break;
            powers.push_back(e);
        }
        found = static_cast<std::int64_t>(powers.size()) == q - 1;
    }
    if (!found) throw Error("NoPrimitivePolynomial", "no primitive polynomial found");
    exp_ = powers;
    log_.assign(q_, 0);
    for (std::uint32_t k = 0; k < q_ - 1; ++k) log_[exp_[k]] = k;
    if (q_ <= 1024) {
        add_cache_.resize(static_cast<size_t>(q_) * q_);
        for (Elem a = 0; a < q_; ++a)
            for (Elem b = 0; b < q_; ++b) {
                auto da = digits(a), db = digits(b);
                for (int i = 0; i < m_; ++i) da[i] = (da[i] + db[i]) % p_;
                add_cache_[static_cast<size_t>(a) * q_ + b] = from_digits(da);
            }
    }
}

std::vector<std::int64_t> FiniteField::digits(Elem a) const {
    std::vector<std::int64_t> d(m_);
    for (int i = 0; i < m_; ++i) {
        d[i] = a % p_;
        a = static_cast<Elem>(a / p_);
    }
    return d;
}

FiniteField::Elem FiniteField::from_digits(const std::vector<std::int64_t>& d) const {
    std::int64_t v = 0;
    for (int i = m_ - 1; i >= 0; --i) v = v * p_ + mod(d[i], p_);
    return static_cast<Elem>(v);
}

FiniteField::Elem FiniteField::from_int(std::int64_t v) const { return static_cast<Elem>(mod(v, p_)); }

FiniteField::Elem FiniteField::add(Elem a, Elem b) const {
    if (!add_cache_.empty()) return add_cache_[static_cast<size_t>(a) * q_ + b];
    if (m_ == 1) return static_cast<Elem>((a + b) % p_);
    auto da = digits(a), db = digits(b);
    for (int i = 0; i < m_; ++i) da[i] = (da[i] + db[i]) % p_;
    return from_digits(da);
}

FiniteField::Elem FiniteField::neg(Elem a) const {
    auto d = digits(a);
    for (auto& x : d) x = mod(-x, p_);
    return from_digits(d);
}

FiniteField::Elem FiniteField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

FiniteField::Elem FiniteField::mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(static_cast<std::uint64_t>(log_[a]) + log_[b]) % (q_ - 1)];
}

FiniteField::Elem FiniteField::inv(Elem a) const {
    if (a == 0) throw Error("DivisionByZero", "inverse of zero in " + name());
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

FiniteField::Elem FiniteField::pow(Elem a, std::int64_t e) const {
    if (a == 0) {
        if (e == 0) return 1;
        if (e < 0) throw Error("DivisionByZero", "negative power of zero");
        return 0;
    }
    return exp_[mod(static_cast<std::int64_t>(log_[a]) * (e % (q_ - 1)), q_ - 1)];
}

FiniteField::Elem FiniteField::exp(std::int64_t k) const { return exp_[mod(k, q_ - 1)]; }

std::uint32_t FiniteField::log(Elem a) const {
    if (a == 0) throw Error("DivisionByZero", "log of zero");
    return log_[a];
}

bool FiniteField::is_square(Elem a) const { return a == 0 || p_ == 2 || log_[a] % 2 == 0; }

std::string FiniteField::name() const { return "GF(" + std::to_string(p_) + "^" + std::to_string(m_) + ")"; }

FieldPtr get_field(std::int64_t p, int m) {
    static std::mutex mu;
    static std::map<std::pair<std::int64_t, int>, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto f = std::make_shared<const FiniteField>(p, m);
    cache.emplace(key, f);
    return f;
}

FieldEmbedding::FieldEmbedding(FieldPtr small, FieldPtr big) : small_(std::move(small)), big_(std::move(big)) {
    if (small_->characteristic() != big_->characteristic() || big_->degree() % small_->degree() != 0)
        throw Error("BadEmbedding", small_->name() + " does not embed in " + big_->name());
    const auto& f = small_->modulus();
    // root of the small field's modulus inside the big field
    FiniteField::Elem root = 0;
    bool found = false;
    for (FiniteField::Elem b = 0; b < big_->order() && !found; ++b) {
        FiniteField::Elem acc = 0;
        for (size_t i = f.size(); i-- > 0;) acc = big_->add(big_->mul(acc, b), big_->from_int(f[i]));
        if (acc == 0) {
            root = b;
            found = true;
        }
    }
    if (!found) throw Error("BadEmbedding", "modulus has no root in " + big_->name());
    table_.resize(small_->order());
    for (FiniteField::Elem a = 0; a < small_->order(); ++a) {
        auto d = small_->digits(a);
        FiniteField::Elem acc = 0;
        for (size_t i = d.size(); i-- > 0;) acc = big_->add(big_->mul(acc, root), big_->from_int(d[i]));
        table_[a] = acc;
    }
}

FiniteField::Elem FieldEmbedding::preimage(FiniteField::Elem b) const {
    for (FiniteField::Elem a = 0; a < table_.size(); ++a)
        if (table_[a] == b) return a;
    throw Error("NotInSubfield", "element not in the embedded subfield");
}

}  // namespace tameforge
