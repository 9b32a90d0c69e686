#pragma once

// Text records and JSON forms for chambers, Morse inventories and expressions.

#include "polychamber/chambers.hpp"
#include "polychamber/morse.hpp"
#include "polychamber/space_expr.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace polychamber {

using Json = nlohmann::ordered_json;

/// "⟨621,64⟩ 6 1,1,2,2,3,4" — code, m, a_min.
std::string chamber_record(const Chamber& chamber);

struct ChamberRecord {
  GeneticCode code;
  LengthVector a_min;
};
/// Inverse of chamber_record. Throws ParseError.
ChamberRecord parse_chamber_record(std::string_view line);

Json subset_to_json(const SubsetMask& j);  // elements, decreasing
SubsetMask subset_from_json(const Json& j, int m);

Json code_to_json(const GeneticCode& code);  // {m, genes}
GeneticCode code_from_json(const Json& j);

/// {m, genes, aMin, witness}; aMin as integers, witness as rational strings.
Json chamber_to_json(const Chamber& chamber);
Chamber chamber_from_json(const Json& j);

/// {m, d, points: [{J, index}], eulerV, histogram}
Json inventory_to_json(const MorseInventory& inv);
MorseInventory inventory_from_json(const Json& j);

Json connectivity_to_json(const ConnectivityReport& report);

/// Expressions travel as their ASCII rendering.
Json expr_to_json(const SpaceExpr& x);
SpaceExpr expr_from_json(const Json& j);

}  // namespace polychamber
