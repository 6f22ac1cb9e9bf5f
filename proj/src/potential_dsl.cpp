#include "dirac1d/potential_dsl.hpp"

#include <charconv>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "dirac1d/output.hpp"

namespace dirac1d::dsl {

namespace {

struct Token {
  std::string text;
  int column = 0;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#') {
      ++i;
    }
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

[[noreturn]] void fail(int line, int column, const std::string& msg) {
  throw input_error("line " + std::to_string(line) + ", column " +
                    std::to_string(column) + ": " + msg);
}

double parse_number(const Token& tok, int line) {
  double value = 0.0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    fail(line, tok.column, "expected a number, got '" + tok.text + "'");
  }
  return value;
}

int parse_count(const Token& tok, int line) {
  const double v = parse_number(tok, line);
  const int n = static_cast<int>(v);
  if (v != n || n < 1) {
    fail(line, tok.column, "expected a positive integer, got '" + tok.text + "'");
  }
  return n;
}

void expect_arity(const std::vector<Token>& toks, std::size_t n, int line) {
  if (toks.size() != n + 1) {
    fail(line, toks[0].column,
         "directive '" + toks[0].text + "' takes " + std::to_string(n) +
             " argument(s), got " + std::to_string(toks.size() - 1));
  }
}

PotentialSpecDocument parse_json_document(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("json: ") + e.what());
  }
  PotentialSpecDocument out;
  try {
    if (!doc.contains("left") || !doc.contains("right")) {
      throw input_error("json: potential needs 'left' and 'right' levels");
    }
    out.mass = doc.value("mass", 1.0);
    out.left_level = doc.at("left").get<double>();
    out.right_level = doc.at("right").get<double>();
    for (const auto& seg : doc.value("segments", nlohmann::json::array())) {
      if (!seg.is_array() || seg.size() != 3) {
        throw input_error("json: each segment must be [x0, x1, V]");
      }
      out.segments.push_back({seg[0].get<double>(), seg[1].get<double>(),
                              seg[2].get<double>()});
      out.segment_lines.push_back(0);
    }
    for (const auto& ramp : doc.value("ramps", nlohmann::json::array())) {
      if (!ramp.is_array() || ramp.size() != 5) {
        throw input_error("json: each ramp must be [x0, x1, V0, V1, steps]");
      }
      for (const auto& seg :
           transfer::staircase(ramp[0].get<double>(), ramp[1].get<double>(),
                               ramp[2].get<double>(), ramp[3].get<double>(),
                               ramp[4].get<int>())) {
        out.segments.push_back(seg);
        out.segment_lines.push_back(0);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("json: ") + e.what());
  }
  return out;
}

}  // namespace

transfer::PotentialProfile PotentialSpecDocument::to_profile() const {
  try {
    return transfer::build_profile(left_level, right_level, segments, mass);
  } catch (const validation_error& e) {
    const std::size_t idx = e.segment_index;
    const int line =
        (idx < segment_lines.size()) ? segment_lines[idx] : 0;
    if (line > 0) {
      throw input_error("line " + std::to_string(line) + ": " + e.what());
    }
    throw;
  }
}

PotentialSpecDocument parse_potential(const std::string& text) {
  const auto first_printable = text.find_first_not_of(" \t\r\n");
  if (first_printable != std::string::npos && text[first_printable] == '{') {
    return parse_json_document(text);
  }

  PotentialSpecDocument out;
  std::optional<int> left_line, right_line, mass_line;

  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const std::vector<Token> toks = tokenize(raw);
    if (toks.empty()) continue;
    const std::string& head = toks[0].text;
    if (head == "mass") {
      expect_arity(toks, 1, line_no);
      if (mass_line) fail(line_no, toks[0].column, "duplicate 'mass' directive");
      mass_line = line_no;
      out.mass = parse_number(toks[1], line_no);
      if (!(out.mass > 0.0)) fail(line_no, toks[1].column, "mass must be positive");
    } else if (head == "left") {
      expect_arity(toks, 1, line_no);
      if (left_line) fail(line_no, toks[0].column, "duplicate 'left' directive");
      left_line = line_no;
      out.left_level = parse_number(toks[1], line_no);
    } else if (head == "right") {
      expect_arity(toks, 1, line_no);
      if (right_line) fail(line_no, toks[0].column, "duplicate 'right' directive");
      right_line = line_no;
      out.right_level = parse_number(toks[1], line_no);
    } else if (head == "segment") {
      expect_arity(toks, 3, line_no);
      out.segments.push_back({parse_number(toks[1], line_no),
                              parse_number(toks[2], line_no),
                              parse_number(toks[3], line_no)});
      out.segment_lines.push_back(line_no);
    } else if (head == "ramp") {
      expect_arity(toks, 5, line_no);
      const double x0 = parse_number(toks[1], line_no);
      const double x1 = parse_number(toks[2], line_no);
      const double v0 = parse_number(toks[3], line_no);
      const double v1 = parse_number(toks[4], line_no);
      const int n = parse_count(toks[5], line_no);
      if (!(x1 > x0)) fail(line_no, toks[2].column, "ramp needs x1 > x0");
      for (const auto& seg : transfer::staircase(x0, x1, v0, v1, n)) {
        out.segments.push_back(seg);
        out.segment_lines.push_back(line_no);
      }
    } else {
      fail(line_no, toks[0].column, "unknown directive '" + head + "'");
    }
  }
  if (!left_line) throw input_error("missing 'left' directive");
  if (!right_line) throw input_error("missing 'right' directive");
  // run validation now so parse errors carry line numbers
  out.to_profile();
  return out;
}

std::string serialize_potential(const transfer::PotentialProfile& profile) {
  std::string out;
  out += "mass " + output::format_double(profile.mass) + "\n";
  out += "left " + output::format_double(profile.left_level) + "\n";
  out += "right " + output::format_double(profile.right_level) + "\n";
  for (const auto& seg : profile.segments) {
    out += "segment " + output::format_double(seg.x_begin) + " " +
           output::format_double(seg.x_end) + " " +
           output::format_double(seg.potential) + "\n";
  }
  return out;
}

}  // namespace dirac1d::dsl
