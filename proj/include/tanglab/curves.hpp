#pragma once

#include "tanglab/geometry.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace tanglab {

struct Box {
    Rational xmin, xmax, ymin, ymax;
};

enum class Color { Red, Blue };

struct DeclaredTangency {
    int other_id = -1;
    Point point;
};

struct Curve {
    int id = -1;
    Color color = Color::Red;
    int source = -1;  // line index for red, point index for blue
    Polyline polyline;
    std::vector<DeclaredTangency> declared_tangencies;
};

struct CurveFamily {
    std::vector<Curve> curves;
    Box box;
    std::optional<std::pair<Rational, Rational>> strip;  // (left_x, right_x)
    bool grounded = false;
};

// Blue disk bookkeeping: the polygon inscribed in the circle around
// center = p_j + (0, r), anchors keyed by line index in placement order
// (counterclockwise along the circle).
struct DiskSpec {
    int point_index = -1;
    Point center;
    Rational radius;
    std::vector<std::pair<int, Point>> anchors;
    std::vector<Point> filler_vertices;
};

}  // namespace tanglab
