#pragma once

// JSON file formats and reports.  Every file carries "format_version": 1 and
// unknown keys are rejected.  Syntax errors report line:column; semantic
// errors report a JSON pointer to the offending value.

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "circpoly/cpolyhedron.hpp"
#include "circpoly/hyperideal3d.hpp"
#include "circpoly/rigidity.hpp"
#include "circpoly/suite.hpp"

namespace circpoly {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

// Throws ParseError when the file cannot be read.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// Throws ParseError with "<source>:<line>:<column>".
Json parse_json(const std::string& text, const std::string& source = "<input>");
// Two-space indented, newline terminated.
std::string to_text(const Json& j);

// Circle literals: {"cap": {"center": [x, y, z], "radius": r}},
// {"planar": {"center": [re, im], "radius": r, "orientation": +1|-1}} and
// {"line": {"direction": [re, im], "offset": t, "orientation": +1|-1}}.
OrientedCircle circle_from_json(const Json& j, const std::string& pointer = "");
Json circle_to_json(const OrientedCircle& c);

struct CPolyFile {
  AbstractPolyhedron poly;
  std::vector<OrientedCircle> circles;  // by vertex index
};

// {"format_version", "polyhedron": {"vertices": [...], "faces": [[...]]},
//  "circles": {name: literal}}.  Unknown face entries throw UnknownVertex.
CPolyFile cpoly_from_json(const Json& j);
Json cpoly_to_json(const AbstractPolyhedron& poly, const std::vector<OrientedCircle>& circles);
CPolyFile load_cpoly(const std::string& path);

// {"format_version", "vertices": [[x, y, z]], "faces": [[i, ...]]}.
ConvexPolyhedron3 polyhedron_from_json(const Json& j);
Json polyhedron_to_json(const ConvexPolyhedron3& p);
ConvexPolyhedron3 load_polyhedron(const std::string& path);

Json angle_to_json(const ComplexAngle& a);
Json map_to_json(const MoebiusMap& m);
Json greenblack_to_json(const GreenBlackPolygon& p);

struct Validation {
  bool passed = false;
  Json report;
  // Built, convex and normalized to case i; present even when properness
  // fails so that links can still be drawn.
  std::optional<CPolyhedron> cp;
};

// Runs every check and records pass, fail or skipped with a witness.
Validation validate(const CPolyFile& file, double tol = kDefaultTol);

Json link_report(const CPolyhedron& cp, const CLink& link);
Json congruence_report(const CPolyhedron& a, const CongruenceVerdict& v);
Json labeling_report(const CPolyhedron& a, const EdgeSignLabeling& labels);
Json classification_report(const ConvexPolyhedron3& p, const HyperidealClass& cls);
Json suite_report(const std::vector<SuiteResult>& results, std::uint64_t seed);

}  // namespace circpoly
