#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

// Deterministic, locale-independent emission of result tables.
// CSV is RFC-4180-style with a header row and LF line endings; numeric cells
// carry 17 significant digits so every double round-trips exactly. JSON uses
// insertion-ordered keys.

namespace dirac1d::output {

using json = nlohmann::ordered_json;

/// Shortest-exact rendering at 17 significant digits (to_chars, no locale).
std::string format_double(double value);

struct OutputRecord {
  std::string schema;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

void write_csv(std::ostream& os, const OutputRecord& record);
void write_json(std::ostream& os, const OutputRecord& record);

/// One CSV cell with quoting rules applied.
std::string csv_cell(const json& value);

}  // namespace dirac1d::output
