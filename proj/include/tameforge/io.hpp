#pragma once

#include "tameforge/depth.hpp"

#include <json.hpp>

#include <memory>
#include <string>

namespace tameforge {

using Json = nlohmann::json;

/// Throws FileNotFound or ParseError.
Json read_json_file(const std::string& path);

/// {rank, roots: [[int]], coroots: [[int]]}
RootDatum parse_datum(const Json& j);
/// {generators: [[[int]]], ramification_index: int}; an empty generator list means the trivial action.
std::shared_ptr<const GaloisAction> parse_galois(const Json& j, std::shared_ptr<const RootDatum> datum,
                                                 size_t bound = kDefaultElementBound);
/// {orbit_depths: [{orbit_rep, depth}], rho_depth, levi_H: [[int]], residue: [{orbit_rep, value, field: [p, m]}]}.
/// Pairs inside levi_H may be omitted (depth 0). Residue values use the base-p digit encoding of F_{p^m}.
CharacterData parse_character_data(const Json& j, std::shared_ptr<const GaloisAction> action);

/// "p,m" -> (p, m); a bare "p" means m = 1.
std::pair<std::int64_t, int> parse_field_spec(const std::string& text);

}  // namespace tameforge
