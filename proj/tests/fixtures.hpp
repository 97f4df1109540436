#pragma once

#include "circpoly/greenblack.hpp"

namespace circpoly::testing {

// All-black rhombus with vertices at distance p on the x-axis and q on the
// y-axis; its sides satisfy cosh s = cosh p cosh q.
GreenBlackPolygon rhombus(double p, double q);

// Right-angled octagon B G B G B G B G with every black side b and the first
// green side g1; the next two green sides are solved so the polygon closes.
GreenBlackPolygon right_angled_octagon(double b, double g1);

}  // namespace circpoly::testing
