#pragma once

#include "tameforge/distinction.hpp"
#include "tameforge/genericity.hpp"
#include "tameforge/intertwining.hpp"
#include "tameforge/io.hpp"
#include "tameforge/weil.hpp"

#include <string>

namespace tameforge {

Json to_json(const Q& q);
/// {level, coeffs: ["p/q", ...]}
Json to_json(const Cyclotomic& c);
Json to_json(const CycMatrix& m);
Json roots_json(const RootDatum& datum, const RootSet& set);

Json error_json(const Error& e);

Json tower_json(const RootDatum& datum, const LeviTower& tower);
Json torsion_json(const TorsionReport& r, std::int64_t p);
Json permissibility_json(const RootDatum& datum, const PermissibilityReport& r, std::int64_t p);
Json weil_json(const HeisenbergRep& rep, const WeilExtension& ext, const WeilCheck& check, const FiniteGroup& group);
Json intertwining_json(const IntertwiningReport& r);
Json distinction_json(const TheoremReport& r);

/// Rows = classes, columns: class index, representative, size, then coefficients of the value.
std::string character_csv(const FiniteGroup& group, const std::vector<Cyclotomic>& values);
std::string character_csv(const MatrixGroup& group, const std::vector<Cyclotomic>& values);

}  // namespace tameforge
