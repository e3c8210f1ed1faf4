#pragma once

#include <string>

#include "gthom/plmap.hpp"

namespace gthom {

// Deterministic SVG rendering of the graph of f over [a, b]: a polyline
// through the exact breakpoints, axes and integer grid. Coordinates are
// decimalized at 12 significant digits (display only).
std::string svg_plot(const PLMap& f, const Rat& a, const Rat& b, int pixels_per_unit = 60);

}  // namespace gthom
