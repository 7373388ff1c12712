#pragma once

#include "kolam/document.hpp"
#include "kolam/enumerate.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace kolam {

// Key order is insertion order so serialized output is stable.
using Json = nlohmann::ordered_json;

inline constexpr const char* kEngineVersion = "0.1.0";
inline constexpr const char* kDocumentSchema = "kolam-doc/1";

// Every response body starts with these two keys.
Json envelope(const std::string& schema);

// Parsing throws SchemaError on malformed payloads; mathematical problems
// (coincident dots, wrong assignment length) surface as KolamError.

// [{"id":0,"x":..,"y":..}, ...]
Json to_json(const DotSet& dots);
// Accepts that array, {"dots": [...]}, or bare [x, y] pairs. Missing ids
// default to the position in the list.
DotSet dots_from_json(const Json& j);

// {"mode":"all-pairs"|"nearest-neighbor"|"cutoff","cutoff_distance":..,"junctions_per_pair":..}
Json to_json(const JunctionPolicy& policy);
// Also accepts the flag form as a string: "all-pairs", "nn", "cutoff=2.5".
JunctionPolicy policy_from_json(const Json& j);
JunctionPolicy parse_policy_flag(const std::string& flag, int junctions_per_pair = 1);

// Letter strings ("BDX"), letter or name arrays, or {"bonds":{"0":"B",...}}.
BondAssignment assignment_from_json(const Json& j, std::size_t junction_count);
Json assignment_to_json(const BondAssignment& a);

Json to_json(const Style& style);
Style style_from_json(const Json& j, Style base = {});

Json to_json(const ValidationReport& report);
ValidationReport report_from_json(const Json& j);

Json to_json(const JunctionSet& junctions);
Json to_json(const ParentKolam& parent);
Json to_json(const Curve& curve);
Curve curve_from_json(const Json& j);

Json to_json(const KolamDocument& doc);
KolamDocument document_from_json(const Json& j);

Json to_json(const CensusRow& row);

// [{"op":"add","x":..,"y":..}, {"op":"remove","id":..},
//  {"op":"move","id":..,"to":[x,y]} | {"op":"move","id":..,"by":[dx,dy]}]
std::vector<DotEdit> edits_from_json(const Json& j);

// Canonical text form shared by the CLI and the service.
std::string dump(const Json& j);

}  // namespace kolam
