#include "tameforge/io.hpp"

#include "tameforge/finite_field.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace tameforge {

namespace {

[[noreturn]] void malformed(const std::string& message, Error::Details details = {}) {
    throw Error("MalformedInput", message, std::move(details));
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::int64_t as_int(const Json& j, const std::string& what) {
    if (!j.is_number_integer()) malformed(what + " must be an integer");
    return j.get<std::int64_t>();
}

IVec as_ivec(const Json& j, const std::string& what) {
    if (!j.is_array()) malformed(what + " must be an array of integers");
    IVec v;
    for (const auto& x : j) v.push_back(as_int(x, what));
    return v;
}

IMat as_imat(const Json& j, const std::string& what) {
    if (!j.is_array()) malformed(what + " must be an array of integer arrays");
    IMat m;
    for (const auto& row : j) m.push_back(as_ivec(row, what));
    return m;
}

Q as_rational(const Json& j, const std::string& what) {
    if (j.is_number_integer()) return Q(static_cast<long>(j.get<std::int64_t>()));
    if (!j.is_string()) malformed(what + " must be a rational string \"p/q\"");
    return parse_rational(j.get<std::string>());
}

std::uint32_t root_index(const RootDatum& datum, const Json& j, const std::string& what) {
    IVec v = as_ivec(j, what);
    if (v.size() != static_cast<size_t>(datum.rank())) malformed(what + " has the wrong length");
    auto idx = datum.find_root(v);
    if (idx < 0) throw Error("NotARoot", what + " is not a root");
    return static_cast<std::uint32_t>(idx);
}

}  // namespace

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("FileNotFound", "cannot open '" + path + "'", {{"path", path}});
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("ParseError", "invalid JSON in '" + path + "'", {{"path", path}, {"reason", e.what()}});
    }
}

RootDatum parse_datum(const Json& j) {
    auto rank = as_int(field(j, "rank"), "rank");
    if (rank < 0 || rank > 64) malformed("rank out of range");
    IMat roots = as_imat(field(j, "roots"), "roots");
    IMat coroots = as_imat(field(j, "coroots"), "coroots");
    return RootDatum(static_cast<int>(rank), roots, coroots);
}

std::shared_ptr<const GaloisAction> parse_galois(const Json& j, std::shared_ptr<const RootDatum> datum, size_t bound) {
    std::vector<IMat> gens;
    for (const auto& g : field(j, "generators")) gens.push_back(as_imat(g, "generator"));
    std::int64_t e = j.contains("ramification_index") ? as_int(j.at("ramification_index"), "ramification_index") : 1;
    if (e < 1) malformed("ramification_index must be positive");
    return std::make_shared<const GaloisAction>(std::move(datum), std::move(gens), e, bound);
}

CharacterData parse_character_data(const Json& j, std::shared_ptr<const GaloisAction> action) {
    CharacterData data;
    data.action = action;
    data.orbits = compute_orbits(*action);
    const RootDatum& datum = action->datum();

    std::set<std::uint32_t> levi;
    if (j.contains("levi_H"))
        for (const auto& r : j.at("levi_H")) levi.insert(root_index(datum, r, "levi_H entry"));
    data.levi_H.assign(levi.begin(), levi.end());

    size_t npairs = data.orbits.pairs.size();
    std::vector<bool> given(npairs, false);
    data.pair_depths.assign(npairs, Q(0));
    for (const auto& entry : field(j, "orbit_depths")) {
        auto root = root_index(datum, field(entry, "orbit_rep"), "orbit_rep");
        auto k = data.orbits.pair_of[root];
        if (given[k]) throw Error("DuplicateDepth", "orbit-pair has two depth entries", {{"pair", std::to_string(k)}});
        given[k] = true;
        data.pair_depths[k] = as_rational(field(entry, "depth"), "depth");
    }
    for (size_t k = 0; k < npairs; ++k) {
        if (given[k]) continue;
        const auto& pr = data.orbits.pairs[k];
        if (!std::includes(data.levi_H.begin(), data.levi_H.end(), pr.begin(), pr.end()))
            throw Error("MissingDepth", "orbit-pair without a depth entry", {{"pair", std::to_string(k)}});
    }
    data.rho_depth = as_rational(field(j, "rho_depth"), "rho_depth");

    if (j.contains("residue"))
        for (const auto& entry : j.at("residue")) {
            ResidueEntry res;
            res.root = root_index(datum, field(entry, "orbit_rep"), "orbit_rep");
            const auto& f = field(entry, "field");
            if (!f.is_array() || f.size() != 2) malformed("field must be [p, m]");
            res.p = as_int(f[0], "field p");
            res.m = static_cast<int>(as_int(f[1], "field m"));
            if (!is_prime(res.p) || res.m < 1) throw Error("NotPrime", "residue field must be F_{p^m} with p prime");
            auto fld = get_field(res.p, res.m);
            auto v = as_int(field(entry, "value"), "value");
            if (v < 0 || v >= static_cast<std::int64_t>(fld->order())) malformed("residue value outside the field encoding");
            res.value = static_cast<FiniteField::Elem>(v);
            data.residues.push_back(res);
        }
    validate(data);
    return data;
}

std::pair<std::int64_t, int> parse_field_spec(const std::string& text) {
    auto comma = text.find(',');
    try {
        size_t used = 0;
        std::int64_t p = std::stoll(text.substr(0, comma), &used);
        if (used != (comma == std::string::npos ? text.size() : comma)) throw std::invalid_argument(text);
        int m = 1;
        if (comma != std::string::npos) {
            std::string rest = text.substr(comma + 1);
            m = std::stoi(rest, &used);
            if (used != rest.size()) throw std::invalid_argument(text);
        }
        if (!is_prime(p)) throw Error("NotPrime", "field characteristic must be prime", {{"p", std::to_string(p)}});
        if (m < 1) throw Error("MalformedInput", "field degree must be positive");
        return {p, m};
    } catch (const std::logic_error&) {
        throw Error("MalformedInput", "field must be given as p,m", {{"value", text}});
    }
}

}  // namespace tameforge
