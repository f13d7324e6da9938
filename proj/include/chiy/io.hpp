#pragma once

// JSON and CSV encodings.
//
// Datum document:
//   {"dim": 6, "fixed_points": [{"weights": [-3, 1, 2]}, {"weights": [-2, -1, 3]}]}
// with dim = 2 * (length of every weights list) and weights ascending.

#include <string>
#include <string_view>

#include <json.hpp>

#include "chiy/enumerate.hpp"
#include "chiy/fpdata.hpp"

namespace chiy {

nlohmann::json datum_to_json(const FixedPointDatum& d);

/// Throws Error (Parse, WrongArity or ZeroWeight) naming the offending field.
FixedPointDatum datum_from_json(const nlohmann::json& j);
FixedPointDatum parse_datum(std::string_view text);

/// Deterministic report: excludes worker count and wall time.
nlohmann::json report_to_json(const EnumerationReport& r);
nlohmann::json open_questions_to_json(const OpenQuestionReport& r);
nlohmann::json classification_to_json(const ClassificationReport& r);
nlohmann::json bound_table_to_json(const std::vector<BoundRow>& rows);

/// Header plus one row per admissible datum:
///   dim,k,weight_types,n_vector,chi,rigidity,weight_pairing,
///   smallest_weight_pairing,kosniowski,crowded,middle_range
/// List-valued columns are semicolon-joined; flags are 0/1.
std::string report_to_csv(const EnumerationReport& r);

}  // namespace chiy
