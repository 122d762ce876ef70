#pragma once

#include "tanglab/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tanglab {

// n points and n-ish lines with an exact incidence list. The grid variant
// below realizes Theta(n^{4/3}) incidences: 2k^3 points, k^3 lines, k^4
// point-on-line pairs.
struct PointLineSystem {
    int k = 0;
    std::vector<Point> points;
    std::vector<Line> lines;
    std::vector<std::pair<int, int>> incidences;  // (line index, point index)
};

// Integer grid {1..k} x {1..2k^2} against lines y = m x + b with
// m in {1..k}, b in {1..k^2}; every line carries exactly k grid points.
PointLineSystem generate_grid_system(int k);

// Affine map (x, y) -> (M x + y, y). Kills shared x-coordinates among grid
// columns and moves every slope into (0, 1). M must exceed the largest
// y-coordinate present.
PointLineSystem shear_normalize(const PointLineSystem& sys, long M);

// Default (smallest valid) shear parameter for a grid system.
long default_shear(const PointLineSystem& sys);

// Independent oracle: substitutes every point into every line, ignoring the
// stored incidence list.
long count_incidences_bruteforce(const PointLineSystem& sys);

struct GeneralPositionReport {
    bool ok = true;
    std::vector<std::string> violations;
    // Line indices ordered by descending intersection with a vertical
    // reference line placed left of all pairwise crossings.
    std::vector<int> line_order;
};

GeneralPositionReport verify_general_position(const PointLineSystem& sys);

}  // namespace tanglab
