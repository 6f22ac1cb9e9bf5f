#include "dirac1d/output.hpp"

#include <charconv>

namespace dirac1d::output {

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string csv_cell(const json& value) {
  std::string text;
  if (value.is_number_float()) {
    text = format_double(value.get<double>());
  } else if (value.is_string()) {
    text = value.get<std::string>();
  } else {
    text = value.dump();
  }
  if (text.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : text) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    quoted += '"';
    return quoted;
  }
  return text;
}

void write_csv(std::ostream& os, const OutputRecord& record) {
  for (std::size_t i = 0; i < record.columns.size(); ++i) {
    if (i) os << ',';
    os << record.columns[i];
  }
  os << '\n';
  for (const auto& row : record.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << csv_cell(row[i]);
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const OutputRecord& record) {
  json doc;
  doc["schema"] = record.schema;
  doc["columns"] = record.columns;
  doc["rows"] = record.rows;
  os << doc.dump(2) << '\n';
}

}  // namespace dirac1d::output
