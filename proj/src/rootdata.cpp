#include "tameforge/rootdata.hpp"

#include "tameforge/errors.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace tameforge {

namespace {

[[noreturn]] void not_a_root_system(const std::string& axiom, const std::string& message) {
    throw Error("NotARootSystem", message, {{"axiom", axiom}});
}

std::string vec_str(const IVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (b && a > UINT64_MAX / b) throw Error("Overflow", "Weyl group order overflows 64 bits");
    return a * b;
}

std::uint64_t factorial(int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r = checked_mul(r, static_cast<std::uint64_t>(i));
    return r;
}

}  // namespace

std::int64_t dot(const IVec& a, const IVec& b) {
    std::int64_t s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

RootDatum::RootDatum(int rank, IMat roots, IMat coroots)
    : rank_(rank), roots_(std::move(roots)), coroots_(std::move(coroots)) {
    if (rank_ < 1) not_a_root_system("rank", "rank must be positive");
    if (roots_.size() != coroots_.size()) not_a_root_system("root_index", "roots and coroots differ in number");
    for (size_t i = 0; i < roots_.size(); ++i) {
        if (roots_[i].size() != static_cast<size_t>(rank_) || coroots_[i].size() != static_cast<size_t>(rank_))
            not_a_root_system("rank", "vector length differs from rank at index " + std::to_string(i));
        if (!index_.emplace(roots_[i], static_cast<std::uint32_t>(i)).second)
            not_a_root_system("distinct", "duplicate root " + vec_str(roots_[i]));
    }
    std::map<IVec, std::uint32_t> coindex;
    for (size_t i = 0; i < coroots_.size(); ++i)
        if (!coindex.emplace(coroots_[i], static_cast<std::uint32_t>(i)).second)
            not_a_root_system("distinct", "duplicate coroot " + vec_str(coroots_[i]));
    for (size_t i = 0; i < roots_.size(); ++i)
        if (dot(roots_[i], coroots_[i]) != 2)
            not_a_root_system("pairing", "<a, a^vee> != 2 for root " + vec_str(roots_[i]));
    neg_.resize(roots_.size());
    for (size_t i = 0; i < roots_.size(); ++i) {
        IVec n = roots_[i];
        for (auto& x : n) x = -x;
        auto it = index_.find(n);
        if (it == index_.end()) not_a_root_system("negation", "negative of " + vec_str(roots_[i]) + " is not a root");
        IVec cn = coroots_[i];
        for (auto& x : cn) x = -x;
        if (coroots_[it->second] != cn)
            not_a_root_system("negation", "coroot of -a is not -a^vee for " + vec_str(roots_[i]));
        neg_[i] = it->second;
    }
    refl_.resize(roots_.size());
    for (size_t i = 0; i < roots_.size(); ++i) {
        refl_[i].resize(roots_.size());
        for (size_t j = 0; j < roots_.size(); ++j) {
            std::int64_t c = dot(roots_[j], coroots_[i]);
            IVec img = roots_[j];
            for (int k = 0; k < rank_; ++k) img[k] -= c * roots_[i][k];
            auto it = index_.find(img);
            if (it == index_.end())
                not_a_root_system("reflection", "s_a does not permute roots: a = " + vec_str(roots_[i]));
            // dual reflection on coroots: y -> y - <a, y> a^vee
            std::int64_t d = dot(roots_[i], coroots_[j]);
            IVec coimg = coroots_[j];
            for (int k = 0; k < rank_; ++k) coimg[k] -= d * coroots_[i][k];
            if (coroots_[it->second] != coimg)
                not_a_root_system("reflection", "s_a does not permute coroots compatibly: a = " + vec_str(roots_[i]));
            refl_[i][j] = it->second;
        }
    }
}

std::int64_t RootDatum::cartan(size_t i, size_t j) const { return dot(roots_[i], coroots_[j]); }

std::int64_t RootDatum::find_root(const IVec& v) const {
    auto it = index_.find(v);
    return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

RootSet RootDatum::all_roots() const {
    RootSet s(roots_.size());
    for (size_t i = 0; i < s.size(); ++i) s[i] = static_cast<std::uint32_t>(i);
    return s;
}

namespace {

// Regular functional f(v) = sum v_i B^i with B > 2 max|v_i|.
std::vector<Z> regular_functional(const RootDatum& datum) {
    std::int64_t m = 1;
    for (const auto& r : datum.roots())
        for (auto x : r) m = std::max<std::int64_t>(m, x < 0 ? -x : x);
    Z b = 2 * m + 1, w = 1;
    std::vector<Z> f;
    for (int i = 0; i < datum.rank(); ++i) {
        f.push_back(w);
        w *= b;
    }
    return f;
}

Z evaluate(const std::vector<Z>& f, const IVec& v) {
    Z s = 0;
    for (size_t i = 0; i < v.size(); ++i) s += f[i] * static_cast<long>(v[i]);
    return s;
}

void check_indices(const RootDatum& datum, const RootSet& subset) {
    for (auto i : subset)
        if (i >= datum.size())
            throw Error("IndexOutOfRange", "root index " + std::to_string(i) + " out of range",
                        {{"index", std::to_string(i)}, {"roots", std::to_string(datum.size())}});
}


std::string classify_component(const IMat& a, std::uint64_t& weyl, int& expected_roots) {
    int n = static_cast<int>(a.size());
    int max_bond = 0;
    std::vector<int> degree(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && a[i][j] != 0) {
                ++degree[i];
                max_bond = std::max<int>(max_bond, static_cast<int>(a[i][j] * a[j][i]));
            }
    auto set = [&](const std::string& fam, int r) {
        if (fam == "A") {
            weyl = factorial(r + 1);
            expected_roots = r * (r + 1);
        } else if (fam == "B" || fam == "C") {
            weyl = checked_mul(std::uint64_t{1} << r, factorial(r));
            expected_roots = 2 * r * r;
        } else if (fam == "D") {
            weyl = checked_mul(std::uint64_t{1} << (r - 1), factorial(r));
            expected_roots = 2 * r * (r - 1);
        } else if (fam == "E") {
            weyl = r == 6 ? 51840ULL : r == 7 ? 2903040ULL : 696729600ULL;
            expected_roots = r == 6 ? 72 : r == 7 ? 126 : 240;
        } else if (fam == "F") {
            weyl = 1152;
            expected_roots = 48;
        } else {
            weyl = 12;
            expected_roots = 12;
        }
        return fam + std::to_string(r);
    };
    if (n == 1) return set("A", 1);
    if (max_bond == 3) {
        if (n != 2) not_a_root_system("finite_type", "triple bond outside rank 2");
        return set("G", 2);
    }
    int edges = 0;
    for (int d : degree) edges += d;
    if (edges / 2 != n - 1) not_a_root_system("finite_type", "Dynkin diagram is not a tree");
    if (max_bond == 2) {
        if (n == 2) return set("B", 2);
        // locate the double bond
        int u = -1, v = -1;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && a[i][j] * a[j][i] == 2) {
                    u = i;
                    v = j;
                }
        for (int d : degree)
            if (d > 2) not_a_root_system("finite_type", "branched diagram with a double bond");
        if (n == 4 && degree[u] == 2 && degree[v] == 2) return set("F", 4);
        if (degree[u] != 1 && degree[v] != 1) not_a_root_system("finite_type", "double bond in the interior");
        // relative squared lengths: |a_j|^2 / |a_i|^2 = A_ij / A_ji along edges
        std::vector<Q> len(n, 0);
        len[0] = 1;
        std::deque<int> queue{0};
        while (!queue.empty()) {
            int i = queue.front();
            queue.pop_front();
            for (int j = 0; j < n; ++j)
                if (i != j && a[i][j] != 0 && len[j] == 0) {
                    len[j] = len[i] * Q(static_cast<long>(a[i][j]), static_cast<unsigned long>(1)) /
                             Q(static_cast<long>(a[j][i]));
                    queue.push_back(j);
                }
        }
        Q longest = *std::max_element(len.begin(), len.end());
        int long_count = static_cast<int>(std::count(len.begin(), len.end(), longest));
        return set(long_count == n - 1 ? "B" : "C", n);
    }
    int branch = -1;
    for (int i = 0; i < n; ++i)
        if (degree[i] > 3) not_a_root_system("finite_type", "vertex of degree > 3");
        else if (degree[i] == 3) {
            if (branch >= 0) not_a_root_system("finite_type", "two branch vertices");
            branch = i;
        }
    if (branch < 0) return set("A", n);
    std::vector<int> arms;
    for (int j = 0; j < n; ++j) {
        if (j == branch || a[branch][j] == 0) continue;
        int len = 1, prev = branch, cur = j;
        while (true) {
            int next = -1;
            for (int k = 0; k < n; ++k)
                if (k != cur && k != prev && a[cur][k] != 0) next = k;
            if (next < 0) break;
            prev = cur;
            cur = next;
            ++len;
        }
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return set("D", n);
    if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return set("E", n);
    not_a_root_system("finite_type", "diagram is not of finite type");
}

}  // namespace

RootSet simple_roots(const RootDatum& datum, const RootSet& subset) {
    auto f = regular_functional(datum);
    RootSet pos;
    std::set<std::uint32_t> pos_set;
    for (auto i : subset)
        if (evaluate(f, datum.root(i)) > 0) {
            pos.push_back(i);
            pos_set.insert(i);
        }
    RootSet simple;
    for (auto a : pos) {
        bool decomposable = false;
        for (auto b : pos) {
            if (a == b) continue;
            IVec diff = datum.root(a);
            for (size_t k = 0; k < diff.size(); ++k) diff[k] -= datum.root(b)[k];
            auto c = datum.find_root(diff);
            if (c >= 0 && pos_set.count(static_cast<std::uint32_t>(c))) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) simple.push_back(a);
    }
    return simple;
}

std::vector<IMat> simple_reflection_matrices(const RootDatum& datum, const RootSet& subset) {
    std::vector<IMat> mats;
    int n = datum.rank();
    for (auto s : simple_roots(datum, subset)) {
        IMat m(n, IVec(n, 0));
        // column k is s(e_k) = e_k - <e_k, a^vee> a
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) m[i][k] = (i == k ? 1 : 0) - datum.coroot(s)[k] * datum.root(s)[i];
        mats.push_back(std::move(m));
    }
    return mats;
}

ClassificationReport classify_subsystem(const RootDatum& datum, const RootSet& subset) {
    check_indices(datum, subset);
    ClassificationReport rep;
    RootSet simple = simple_roots(datum, subset);
    size_t n = simple.size();
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::deque<size_t> queue{s};
        comp[s] = ncomp;
        while (!queue.empty()) {
            size_t i = queue.front();
            queue.pop_front();
            for (size_t j = 0; j < n; ++j)
                if (comp[j] < 0 && datum.cartan(simple[j], simple[i]) != 0) {
                    comp[j] = ncomp;
                    queue.push_back(j);
                }
        }
        ++ncomp;
    }
    size_t covered = 0;
    for (int c = 0; c < ncomp; ++c) {
        ComponentInfo info;
        for (size_t i = 0; i < n; ++i)
            if (comp[i] == c) info.simple_roots.push_back(simple[i]);
        info.rank = static_cast<int>(info.simple_roots.size());
        IMat a(info.rank, IVec(info.rank));
        for (int i = 0; i < info.rank; ++i)
            for (int j = 0; j < info.rank; ++j) a[i][j] = datum.cartan(info.simple_roots[j], info.simple_roots[i]);
        int expected = 0;
        info.type = classify_component(a, info.weyl_order, expected);
        QMat span;
        for (auto s : info.simple_roots) span.push_back(to_qmat({datum.root(s)})[0]);
        QSpan sp(span, static_cast<size_t>(datum.rank()));
        for (auto r : subset)
            if (sp.contains(to_qmat({datum.root(r)})[0])) info.roots.push_back(r);
        if (static_cast<int>(info.roots.size()) != expected)
            not_a_root_system("closure", "component " + info.type + " has " + std::to_string(info.roots.size()) +
                                             " roots, expected " + std::to_string(expected));
        covered += info.roots.size();
        rep.weyl_order = checked_mul(rep.weyl_order, info.weyl_order);
        rep.components.push_back(std::move(info));
    }
    if (covered != subset.size()) not_a_root_system("closure", "subset is not a union of irreducible root systems");
    std::sort(rep.components.begin(), rep.components.end(),
              [](const ComponentInfo& x, const ComponentInfo& y) { return x.roots.front() < y.roots.front(); });
    return rep;
}

ClassificationReport classify_and_validate(const RootDatum& datum) {
    return classify_subsystem(datum, datum.all_roots());
}

std::uint64_t weyl_group_order(const RootDatum& datum, const RootSet& subset) {
    return classify_subsystem(datum, subset).weyl_order;
}

bool is_levi_subsystem(const RootDatum& datum, const RootSet& subset) {
    check_indices(datum, subset);
    std::vector<bool> in(datum.size(), false);
    for (auto i : subset) in[i] = true;
    for (auto i : subset)
        if (!in[datum.negative(i)]) return false;
    QMat vecs;
    for (auto i : subset) vecs.push_back(to_qmat({datum.root(i)})[0]);
    QSpan span(vecs, static_cast<size_t>(datum.rank()));
    for (size_t r = 0; r < datum.size(); ++r)
        if (!in[r] && span.contains(to_qmat({datum.root(r)})[0])) return false;
    return true;
}

StabilizerReport weyl_stabilizer_order(const RootDatum& datum, const RootSet& subset,
                                       const std::vector<FiniteField::Elem>& point, const FieldPtr& field) {
    if (!field) throw Error("FieldCharacteristicZero", "a finite field is required for Weyl stabilizers");
    if (point.size() != static_cast<size_t>(datum.rank()))
        throw Error("DimensionMismatch", "point has " + std::to_string(point.size()) + " coordinates, rank is " +
                                             std::to_string(datum.rank()));
    const FiniteField& F = *field;
    StabilizerReport rep;
    rep.weyl_order = weyl_group_order(datum, subset);
    RootSet simple = simple_roots(datum, subset);
    // precompute field images of simple roots/coroots
    std::vector<std::vector<FiniteField::Elem>> a(simple.size()), av(simple.size());
    for (size_t s = 0; s < simple.size(); ++s)
        for (int k = 0; k < datum.rank(); ++k) {
            a[s].push_back(F.from_int(datum.root(simple[s])[k]));
            av[s].push_back(F.from_int(datum.coroot(simple[s])[k]));
        }
    std::set<std::vector<FiniteField::Elem>> seen{point};
    std::deque<std::vector<FiniteField::Elem>> queue{point};
    while (!queue.empty()) {
        auto x = queue.front();
        queue.pop_front();
        for (size_t s = 0; s < simple.size(); ++s) {
            FiniteField::Elem c = 0;
            for (int k = 0; k < datum.rank(); ++k) c = F.add(c, F.mul(x[k], av[s][k]));
            if (c == 0) continue;
            auto y = x;
            for (int k = 0; k < datum.rank(); ++k) y[k] = F.sub(y[k], F.mul(c, a[s][k]));
            if (seen.insert(y).second) queue.push_back(std::move(y));
        }
    }
    rep.orbit_size = seen.size();
    ensure(rep.weyl_order % rep.orbit_size == 0, "orbit size does not divide |W|",
           {{"orbit", std::to_string(rep.orbit_size)}, {"weyl", std::to_string(rep.weyl_order)}});
    rep.stabilizer_order = rep.weyl_order / rep.orbit_size;
    return rep;
}

Z fundamental_group_order(const RootDatum& datum, const RootSet& subset) {
    check_indices(datum, subset);
    if (subset.empty()) return 1;
    IMat rows;
    for (auto i : subset) rows.push_back(datum.coroot(i));
    return torsion_order(to_intmat(rows));
}

Z fundamental_group_order(const RootDatum& datum) { return fundamental_group_order(datum, datum.all_roots()); }

Z character_quotient_torsion(const RootDatum& datum) { return torsion_order(to_intmat(datum.roots())); }

TorsionReport torsion_report(const RootDatum& datum, std::int64_t p) {
    if (p == 2) throw Error("EvenPrime", "p = 2 is excluded", {{"p", "2"}});
    if (!is_prime(p)) throw Error("NotPrime", std::to_string(p) + " is not prime", {{"p", std::to_string(p)}});
    TorsionReport rep;
    auto cls = classify_and_validate(datum);
    rep.quotient_torsion = character_quotient_torsion(datum);
    bool has_a = false, exceptional3 = false, e8 = false;
    for (const auto& c : cls.components) {
        rep.types.push_back(c.type);
        if (c.type[0] == 'A') has_a = true;
        if (c.type == "E6" || c.type == "E7" || c.type == "E8" || c.type == "F4") exceptional3 = true;
        if (c.type == "E8") e8 = true;
    }
    Z pz(static_cast<long>(p));
    if (p == 3 && exceptional3) {
        rep.condition4_required = true;
        rep.reason = "p = 3 and the derived group has a factor of type E6, E7, E8 or F4";
    } else if (p == 5 && e8) {
        rep.condition4_required = true;
        rep.reason = "p = 5 and the derived group has a factor of type E8";
    } else if (has_a && rep.quotient_torsion % pz == 0) {
        rep.condition4_required = true;
        rep.reason = "type A factor and p divides |tors(X/ZPhi)| = " + rep.quotient_torsion.get_str();
    } else {
        rep.reason = "no torsion clause applies (|tors(X/ZPhi)| = " + rep.quotient_torsion.get_str() + ")";
    }
    return rep;
}

IMat cartan_matrix(char family, int n) {
    IMat a(n, IVec(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
    switch (family) {
    case 'A':
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
        break;
    case 'B':
    case 'C':
        if (n < 2) throw Error("BadType", "B/C need rank >= 2");
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
        // a[i][j] = <a_j, a_i^vee>; the last simple root is short in B, long in C
        if (family == 'B') a[n - 1][n - 2] = -2;
        else a[n - 2][n - 1] = -2;
        break;
    case 'D':
        if (n < 4) throw Error("BadType", "D needs rank >= 4");
        for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
        link(n - 3, n - 1);
        break;
    case 'E':
        if (n < 6 || n > 8) throw Error("BadType", "E needs rank 6, 7 or 8");
        // Bourbaki: 1-3-4-5-6-..., 2 attached to 4
        link(0, 2);
        link(2, 3);
        link(1, 3);
        for (int i = 3; i + 1 < n; ++i) link(i, i + 1);
        break;
    case 'F':
        if (n != 4) throw Error("BadType", "F needs rank 4");
        link(0, 1);
        link(2, 3);
        a[1][2] = -2;
        a[2][1] = -1;
        break;
    case 'G':
        if (n != 2) throw Error("BadType", "G needs rank 2");
        a[0][1] = -1;
        a[1][0] = -3;
        break;
    default:
        throw Error("BadType", std::string("unknown family ") + family);
    }
    return a;
}

namespace {

// All (root, coroot) pairs in simple-root / simple-coroot coordinates.
std::vector<std::pair<IVec, IVec>> root_pairs(const IMat& a) {
    int n = static_cast<int>(a.size());
    std::vector<std::pair<IVec, IVec>> out;
    std::set<IVec> seen;
    std::deque<std::pair<IVec, IVec>> queue;
    for (int i = 0; i < n; ++i) {
        IVec e(n, 0);
        e[i] = 1;
        queue.emplace_back(e, e);
        seen.insert(e);
    }
    while (!queue.empty()) {
        auto [r, c] = queue.front();
        queue.pop_front();
        out.emplace_back(r, c);
        if (out.size() > 1000) throw Error("BadType", "Cartan matrix is not of finite type");
        for (int i = 0; i < n; ++i) {
            std::int64_t ra = 0, ca = 0;  // <r, a_i^vee>, <a_i, c>
            for (int j = 0; j < n; ++j) {
                ra += r[j] * a[i][j];
                ca += c[j] * a[j][i];
            }
            IVec r2 = r, c2 = c;
            r2[i] -= ra;
            c2[i] -= ca;
            if (seen.insert(r2).second) queue.emplace_back(r2, c2);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

RootDatum simply_connected_datum(const IMat& a) {
    int n = static_cast<int>(a.size());
    IMat roots, coroots;
    for (auto& [r, c] : root_pairs(a)) {
        IVec x(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) x[i] += a[i][j] * r[j];
        roots.push_back(x);
        coroots.push_back(c);
    }
    return RootDatum(n, roots, coroots);
}

RootDatum adjoint_datum(const IMat& a) {
    int n = static_cast<int>(a.size());
    IMat roots, coroots;
    for (auto& [r, c] : root_pairs(a)) {
        IVec y(n, 0);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) y[j] += c[i] * a[i][j];
        roots.push_back(r);
        coroots.push_back(y);
    }
    return RootDatum(n, roots, coroots);
}

RootDatum gl_datum(int n) {
    if (n < 2) throw Error("BadType", "GL_n needs n >= 2");
    IMat roots;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) {
                IVec v(n, 0);
                v[i] = 1;
                v[j] = -1;
                roots.push_back(v);
            }
    return RootDatum(n, roots, roots);
}

RootDatum sl_datum(int n) { return simply_connected_datum(cartan_matrix('A', n - 1)); }
RootDatum pgl_datum(int n) { return adjoint_datum(cartan_matrix('A', n - 1)); }

RootDatum direct_sum(const RootDatum& a, const RootDatum& b) {
    int n = a.rank() + b.rank();
    IMat roots, coroots;
    auto pad = [&](const IVec& v, int offset) {
        IVec w(n, 0);
        for (size_t i = 0; i < v.size(); ++i) w[offset + i] = v[i];
        return w;
    };
    for (size_t i = 0; i < a.size(); ++i) {
        roots.push_back(pad(a.root(i), 0));
        coroots.push_back(pad(a.coroot(i), 0));
    }
    for (size_t i = 0; i < b.size(); ++i) {
        roots.push_back(pad(b.root(i), a.rank()));
        coroots.push_back(pad(b.coroot(i), a.rank()));
    }
    return RootDatum(n, roots, coroots);
}

RootDatum change_basis(const RootDatum& datum, const IMat& u) {
    QMat inv = inverse_q(to_qmat(u));
    if (inv.empty()) throw Error("NotUnimodular", "basis change is singular");
    int n = datum.rank();
    IMat uinvt(n, IVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (inv[j][i].get_den() != 1) throw Error("NotUnimodular", "basis change is not unimodular");
            uinvt[i][j] = inv[j][i].get_num().get_si();
        }
    auto apply_mat = [n](const IMat& m, const IVec& v) {
        IVec w(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) w[i] += m[i][j] * v[j];
        return w;
    };
    IMat roots, coroots;
    for (size_t i = 0; i < datum.size(); ++i) {
        roots.push_back(apply_mat(u, datum.root(i)));
        coroots.push_back(apply_mat(uinvt, datum.coroot(i)));
    }
    return RootDatum(n, roots, coroots);
}

}  // namespace tameforge
