#include "tameforge/matrix_group.hpp"

#include <algorithm>

namespace tameforge {

namespace fmat {

FMat identity(const FiniteField& f, size_t n) {
    FMat m(n * n, f.zero());
    for (size_t i = 0; i < n; ++i) m[i * n + i] = f.one();
    return m;
}

FMat mul(const FiniteField& f, const FMat& a, const FMat& b, size_t n) {
    FMat c(n * n, f.zero());
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            auto x = a[i * n + k];
            if (!x) continue;
            for (size_t j = 0; j < n; ++j) c[i * n + j] = f.add(c[i * n + j], f.mul(x, b[k * n + j]));
        }
    return c;
}

FMat inverse(const FiniteField& f, const FMat& a, size_t n) {
    FMat m = a, inv = identity(f, n);
    for (size_t c = 0; c < n; ++c) {
        size_t piv = n;
        for (size_t r = c; r < n; ++r)
            if (m[r * n + c]) {
                piv = r;
                break;
            }
        if (piv == n) return {};
        for (size_t j = 0; j < n; ++j) {
            std::swap(m[c * n + j], m[piv * n + j]);
            std::swap(inv[c * n + j], inv[piv * n + j]);
        }
        auto s = f.inv(m[c * n + c]);
        for (size_t j = 0; j < n; ++j) {
            m[c * n + j] = f.mul(m[c * n + j], s);
            inv[c * n + j] = f.mul(inv[c * n + j], s);
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || !m[r * n + c]) continue;
            auto x = m[r * n + c];
            for (size_t j = 0; j < n; ++j) {
                m[r * n + j] = f.sub(m[r * n + j], f.mul(x, m[c * n + j]));
                inv[r * n + j] = f.sub(inv[r * n + j], f.mul(x, inv[c * n + j]));
            }
        }
    }
    return inv;
}

FiniteField::Elem det(const FiniteField& f, const FMat& a, size_t n) {
    FMat m = a;
    auto d = f.one();
    for (size_t c = 0; c < n; ++c) {
        size_t piv = n;
        for (size_t r = c; r < n; ++r)
            if (m[r * n + c]) {
                piv = r;
                break;
            }
        if (piv == n) return f.zero();
        if (piv != c) {
            for (size_t j = 0; j < n; ++j) std::swap(m[c * n + j], m[piv * n + j]);
            d = f.neg(d);
        }
        d = f.mul(d, m[c * n + c]);
        auto s = f.inv(m[c * n + c]);
        for (size_t r = c + 1; r < n; ++r) {
            if (!m[r * n + c]) continue;
            auto x = f.mul(m[r * n + c], s);
            for (size_t j = c; j < n; ++j) m[r * n + j] = f.sub(m[r * n + j], f.mul(x, m[c * n + j]));
        }
    }
    return d;
}

FiniteField::Elem trace(const FiniteField& f, const FMat& a, size_t n) {
    auto t = f.zero();
    for (size_t i = 0; i < n; ++i) t = f.add(t, a[i * n + i]);
    return t;
}

FMat transpose(const FMat& a, size_t n) {
    FMat t(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) t[j * n + i] = a[i * n + j];
    return t;
}

FMat scaled(const FiniteField& f, const FMat& a, FiniteField::Elem c) {
    FMat out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = f.mul(a[i], c);
    return out;
}

bool is_scalar(const FMat& a, size_t n) {
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (i != j ? a[i * n + j] != 0 : a[i * n + i] != a[0]) return false;
    return true;
}

FMat block_diag(const FMat& a, size_t n, const FMat& b, size_t m) {
    size_t s = n + m;
    FMat out(s * s, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out[i * s + j] = a[i * n + j];
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) out[(n + i) * s + n + j] = b[i * m + j];
    return out;
}

}  // namespace fmat

MatrixGroup::MatrixGroup(FieldPtr field, size_t n, std::vector<FMat> generators, size_t bound)
    : field_(std::move(field)), n_(n), generators_(std::move(generators)) {
    for (const auto& g : generators_)
        if (g.size() != n_ * n_ || fmat::det(*field_, g, n_) == 0)
            throw Error("NotInvertible", "generator is not an invertible " + std::to_string(n_) + "x" + std::to_string(n_) +
                                             " matrix");
    elements_ = enumerate_closure(generators_, fmat::identity(*field_, n_),
                                  [&](const FMat& a, const FMat& b) { return mul(a, b); }, bound);
    for (size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], static_cast<std::uint32_t>(i));
}

MatrixGroup MatrixGroup::general_linear(FieldPtr field, size_t n, size_t bound) {
    const auto& f = *field;
    std::uint64_t order = 1, qn = 1, q = f.order();
    for (size_t i = 0; i < n; ++i) qn *= q;
    for (std::uint64_t pk = 1, i = 0; i < n; ++i, pk *= q) order *= qn - pk;
    if (order > bound)
        throw Error("TooLarge", "GL_" + std::to_string(n) + "(F_" + std::to_string(q) + ") exceeds the element bound",
                    {{"order", std::to_string(order)}, {"bound", std::to_string(bound)}});
    std::vector<FMat> gens;
    FMat d = fmat::identity(f, n);
    d[0] = f.generator();
    gens.push_back(d);
    for (size_t i = 0; i + 1 < n; ++i) {
        FMat u = fmat::identity(f, n);
        u[i * n + i + 1] = f.one();
        gens.push_back(u);
        FMat s = fmat::identity(f, n);
        s[i * n + i] = s[(i + 1) * n + i + 1] = f.zero();
        s[i * n + i + 1] = s[(i + 1) * n + i] = f.one();
        gens.push_back(s);
    }
    MatrixGroup g(field, n, gens, bound);
    if (g.order() != order) throw TheoremViolation("generators do not generate GL_n");
    return g;
}

std::uint32_t MatrixGroup::index_of(const FMat& a) const {
    auto it = index_.find(a);
    if (it == index_.end()) throw Error("NotInGroup", "matrix is not an element of the group");
    return it->second;
}

void MatrixGroup::compute_classes() const {
    if (!classes_.empty()) return;
    class_of_.assign(order(), UINT32_MAX);
    std::vector<FMat> ginv;
    for (const auto& g : generators_) ginv.push_back(inv(g));
    for (std::uint32_t x = 0; x < order(); ++x) {
        if (class_of_[x] != UINT32_MAX) continue;
        auto id = static_cast<std::uint32_t>(classes_.size());
        std::vector<std::uint32_t> cls{x};
        class_of_[x] = id;
        for (size_t i = 0; i < cls.size(); ++i)
            for (size_t g = 0; g < generators_.size(); ++g) {
                auto y = index_of(mul(mul(generators_[g], elements_[cls[i]]), ginv[g]));
                if (class_of_[y] != UINT32_MAX) continue;
                class_of_[y] = id;
                cls.push_back(y);
            }
        std::sort(cls.begin(), cls.end());
        classes_.push_back(std::move(cls));
    }
}

const std::vector<std::vector<std::uint32_t>>& MatrixGroup::classes() const {
    compute_classes();
    return classes_;
}

std::uint32_t MatrixGroup::class_of(std::uint32_t i) const {
    compute_classes();
    return class_of_[i];
}

ClassFunction MatrixGroup::class_function(const std::vector<Cyclotomic>& values) const {
    return ClassFunction::from_elements(this, classes(), values);
}

FiniteGroup MatrixGroup::to_finite_group() const {
    return FiniteGroup::from_elements(elements_, [&](const FMat& a, const FMat& b) { return mul(a, b); });
}

}  // namespace tameforge
