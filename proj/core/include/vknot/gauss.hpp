#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace vknot {

// Oriented Gauss codes for virtual knots.  A code is the sequence of crossing
// passes met while travelling once around the knot: each pass records whether
// we ride over or under, the direction of the other strand as seen from the
// direction of travel, and the crossing label.

struct GaussCodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SyntaxError : GaussCodeError {
  using GaussCodeError::GaussCodeError;
};
struct ConsistencyError : GaussCodeError {
  using GaussCodeError::GaussCodeError;
};
struct MultiComponentError : GaussCodeError {
  using GaussCodeError::GaussCodeError;
};

enum class Side : unsigned char { LeftToRight, RightToLeft };

struct CrossingPass {
  bool over = false;          // '+' rides over, '-' rides under
  Side side = Side::LeftToRight;  // '>' other strand left-to-right, '<' reverse
  int crossing_id = 0;        // 1-based, renumbered by first appearance

  friend bool operator==(const CrossingPass&, const CrossingPass&) = default;
};

struct OrientedGaussCode {
  std::vector<CrossingPass> passes;  // size 2c
  int crossing_count = 0;

  friend bool operator==(const OrientedGaussCode&, const OrientedGaussCode&) = default;
};

// Parses a single-component oriented Gauss code.  Whitespace between tokens is
// ignored.  Crossing labels are renumbered to {1..c} in order of first
// appearance.  Throws SyntaxError for malformed input, MultiComponentError if
// a ';' component separator is present, and ConsistencyError unless every
// label occurs exactly twice, once over and once under.
OrientedGaussCode parse_gauss_code(const std::string& text);

// Canonical serialization: tightly packed pass triples, labels renumbered by
// first appearance.  parse_gauss_code(serialize_gauss_code(g)) == g.
std::string serialize_gauss_code(const OrientedGaussCode& code);

}  // namespace vknot
