#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "copt/division.hpp"
#include "copt/eim.hpp"
#include "copt/geometry.hpp"
#include "copt/trace.hpp"

namespace copt {

// Schema tags stamped into every artifact so replays can be checked.
inline constexpr const char* kDivisionSchema = "copt-division-1";
inline constexpr const char* kEimSchema = "copt-eim-1";
inline constexpr const char* kTraceSchema = "copt-trace-1";
inline constexpr const char* kSummarySchema = "copt-summary-1";
inline constexpr const char* kCompareSchema = "copt-compare-1";
inline constexpr const char* kVerifySchema = "copt-verify-1";

// {"kind","vertices","apexes","fixed"}; simplices keep their vertex
// list and an empty fixed map, boundary polytopes keep apexes plus the
// base-face corners and {axis: "lower"|"upper"}.
nlohmann::json cell_to_json(const Cell& cell, const Box& root);
Cell cell_from_json(const nlohmann::json& j, const Box& root, CellId id);

// Root box + cell records (+ gamma when supplied, for rendering).
nlohmann::json division_to_json(const Division& div, const std::vector<Vector>& gamma = {});
Division division_from_json(const nlohmann::json& j);
std::vector<Vector> gamma_from_json(const nlohmann::json& j);

nlohmann::json eim_to_json(const EimBasis& basis);
EimBasis eim_from_json(const nlohmann::json& j);

// Two comment lines (schema, resolved config), the fixed column
// header, then one row per step. Doubles print with %.17g so replays
// are byte-comparable; wall_ms is the only nondeterministic field.
std::string trace_to_csv(const std::vector<StepRecord>& trace, const std::string& config_line);

// Strips the trailing wall_ms field from every data row; comment and
// header lines pass through. Byte-equality of the result is the
// replay-determinism check.
std::string strip_wall_ms(const std::string& csv);

std::string render_division_svg(const Division& div, const std::vector<Vector>& gamma);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace copt
