#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qasdyn/iteration.hpp"
#include "qasdyn/projmap.hpp"

namespace qasdyn {

/// Syntax or validation failure in a map document. line and column are
/// 1-based; zero when the problem has no single location.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// Map document as written: expressions are kept as text until build_map.
struct MapSpec {
  std::string name;
  std::vector<std::string> variables;
  std::vector<std::string> components;
  std::optional<std::string> h0;
  std::optional<std::size_t> n0;
  std::vector<std::string> factors;
  std::vector<std::vector<Integer>> witness_points;
  std::size_t horizon = 10;
  Budget budget;
  Rational tolerance = make_rational(1, ipow(10, 12));

  // Source positions of the expression fields, for error reporting.
  struct Position {
    std::size_t line = 0;
    std::size_t column = 0;
  };
  std::vector<Position> component_at;
  Position h0_at;
  std::vector<Position> factor_at;
};

/// Reads the key = value document format (see docs/map-format.md).
MapSpec parse_map_document(std::string_view text);

/// Canonical document for a spec; parse_map_document inverts it.
std::string emit_map_document(const MapSpec& spec);

/// Polynomial with a common denominator, as produced by the expression
/// grammar.
struct ScaledPolynomial {
  Polynomial numerator;
  Integer denominator = 1;  // positive
};

/// Integers, a/b, identifiers from `variables`, + - * ^ and parentheses.
/// Throws ParseError with a column relative to `text` (line 1).
ScaledPolynomial parse_expression(std::string_view text, const std::vector<std::string>& variables);

struct ParsedMap {
  std::string name;
  std::vector<std::string> variables;
  HomogeneousMap map;
  Polynomial jacobian;
  std::optional<Polynomial> h0;
  std::optional<std::size_t> n0;
  std::vector<Polynomial> factors;
  std::vector<ProjectivePoint> witness_points;
  std::size_t horizon = 10;
  Budget budget;
  Rational tolerance;
  std::vector<std::string> notes;
  std::string canonical_document;
};

/// Parses the expressions, clears denominators jointly, and validates
/// homogeneity, equal degree and a nonzero Jacobian determinant. Throws
/// ParseError.
ParsedMap build_map(const MapSpec& spec);

/// Document text to validated map.
ParsedMap parse_map(std::string_view text);

/// Map document for an already validated map.
MapSpec spec_from_map(const HomogeneousMap& f, const std::vector<std::string>& variables);

}  // namespace qasdyn
