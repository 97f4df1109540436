#pragma once

#include <string>

#include "circpoly/cpolyhedron.hpp"

namespace circpoly {

// The c-link in Poincare coordinates of the vertex circle's disk: green and
// black edges, right-angle marks at black vertices.  An improper link is
// drawn as its raw support lines with the failure in the caption.
std::string link_svg(const CPolyhedron& cp, const CLink& link);

// Every vertex circle in a stereographic chart centered away from all of
// them, with orientation arrows and vertex names.
std::string overview_svg(const AbstractPolyhedron& poly, const std::vector<OrientedCircle>& circles);

}  // namespace circpoly
