#pragma once

#include <string>
#include <vector>

#include "dirac1d/transfer.hpp"

// Line-oriented potential description language:
//
//   # comment to end of line
//   mass 1
//   left 0
//   right 5
//   segment -1 1 5
//   ramp 0 20 0 10 200
//
// Exactly one `left` and one `right`; `mass` optional (default 1); `segment`
// and `ramp` in any order and quantity. A JSON document with the same fields
// ({"mass":..,"left":..,"right":..,"segments":[[x0,x1,V],..],
//  "ramps":[[x0,x1,V0,V1,n],..]}) is accepted as alternative input.

namespace dirac1d::dsl {

struct PotentialSpecDocument {
  double mass = 1.0;
  double left_level = 0.0;
  double right_level = 0.0;
  std::vector<transfer::Segment> segments;  // ramps already expanded
  std::vector<int> segment_lines;           // 1-based source line per segment

  transfer::PotentialProfile to_profile() const;
};

/// Parse DSL text (or JSON when the first non-space character is '{').
/// Diagnostics carry 1-based line and column.
PotentialSpecDocument parse_potential(const std::string& text);

/// Canonical DSL serialization of a profile; parse(serialize(p)) == p.
std::string serialize_potential(const transfer::PotentialProfile& profile);

}  // namespace dirac1d::dsl
