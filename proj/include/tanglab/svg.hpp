#pragma once

#include "tanglab/curves.hpp"
#include "tanglab/verifier.hpp"

#include <string>

namespace tanglab {

// Deterministic SVG rendering: red and blue strokes, markers on certified
// tangency points, strip boundaries when grounded. Coordinates are printed
// with 6 decimals; nothing downstream depends on them.
std::string render_svg(const CurveFamily& family, const TangencyReport* report);

}  // namespace tanglab
