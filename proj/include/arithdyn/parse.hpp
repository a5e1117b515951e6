#ifndef ARITHDYN_PARSE_HPP
#define ARITHDYN_PARSE_HPP

#include <optional>
#include <string>
#include <vector>

#include "arithdyn/arith.hpp"
#include "arithdyn/heights.hpp"
#include "arithdyn/multipoly.hpp"
#include "arithdyn/selfmap.hpp"

namespace arithdyn {

// Map definition text:
//
//   [label: <text>]
//   <ambient> ; <var>, ... ; <component>, ...
//
// with ambient P1 | P2 | PN:n | A2 | AN:n. `#` starts a comment that runs to
// the end of the line. See docs/grammar.md.
struct MapDefinition {
  std::string ambient;  // normalized: P1, P2, PN:n, A2, AN:n
  bool projective = true;
  std::size_t dim = 0;
  std::vector<std::string> variables;
  std::vector<MultiPoly> polys;         // as written, before any reduction
  std::vector<std::string> components;  // canonical text of polys
  std::optional<std::string> label;
  SelfMap map;
};

MapDefinition parse_map(const std::string& text);
std::string print_map(const MapDefinition& def);

// Expression in the given variables; positions in errors are relative to
// `text` unless line/column offsets are supplied.
MultiPoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars);

// One polynomial per line (blank lines and comments ignored).
std::vector<MultiPoly> parse_polynomial_list(const std::string& text, const std::vector<std::string>& vars);

// "E; a, b" for y^2 = x^3 + a x + b, optional label line as for maps.
struct CurveDefinition {
  Rational a, b;
  std::optional<std::string> label;
};
CurveDefinition parse_curve(const std::string& text);
std::string print_curve(const CurveDefinition& def);

// "[1:2:3]" (projective, integers or rationals) and "(1/2, 3)" (affine).
ProjPoint parse_proj_point(const std::string& text);
AffPoint parse_aff_point(const std::string& text);

// Comma-separated rationals, e.g. "1, -1/2".
std::vector<Rational> parse_rational_list(const std::string& text);

std::string read_file(const std::string& path);

}  // namespace arithdyn

#endif
