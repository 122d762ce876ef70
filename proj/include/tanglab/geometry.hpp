#pragma once

#include "tanglab/rational.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tanglab {

struct Point {
    Rational x, y;

    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Point& o) const { return !(*this == o); }
};

inline Point pt(long x, long y) { return Point{rat(x), rat(y)}; }

// Non-vertical line y = slope*x + intercept. Vertical lines are
// unrepresentable on purpose; the constructions never need them.
struct Line {
    Rational slope, intercept;

    Rational y_at(const Rational& x) const { return slope * x + intercept; }
    bool contains(const Point& p) const { return p.y == y_at(p.x); }
    bool operator==(const Line& o) const { return slope == o.slope && intercept == o.intercept; }
};

struct Segment {
    Point a, b;
};

// Sign of the cross product (b-a) x (c-a): +1 counterclockwise, 0 collinear.
int orient(const Point& a, const Point& b, const Point& c);

bool point_on_segment(const Point& p, const Segment& s);

struct IntersectionResult {
    enum Kind { Empty, Single, Overlap } kind = Empty;
    Point point;       // valid when kind == Single
    Segment overlap;   // valid when kind == Overlap (positive length)
};

// Exact segment intersection; collinear overlaps of positive length are
// reported as sub-segments, never collapsed to a point.
IntersectionResult segment_intersect(const Segment& s, const Segment& t);

// Crossing point of two non-parallel lines.
std::optional<Point> line_intersect(const Line& a, const Line& b);

// Second intersection of the line through `base` with given slope and the
// circle around `center` of radius r, where base = center - (0, r) is the
// bottommost circle point. Rejects slope 0 (the horizontal line meets the
// circle only at base).
Point line_second_circle_intersection(const Point& center, const Rational& r,
                                      const Point& base, const Rational& slope);

struct Polyline {
    std::vector<Point> vertices;

    bool valid_chain(std::string* why = nullptr) const;  // >=2 vertices, no stutter/backtrack
    size_t size() const { return vertices.size(); }
};

// Angular comparison of direction vectors (exact, full 2*pi range measured
// counterclockwise from the positive x axis).
int compare_directions(const Point& u, const Point& v);

// Squared euclidean distance.
Rational dist2(const Point& a, const Point& b);

// Squared distance from point to full line.
Rational point_line_dist2(const Point& p, const Line& l);

// Squared distance from point to segment.
Rational point_segment_dist2(const Point& p, const Segment& s);

// Squared distance between two segments (0 when they meet).
Rational segment_dist2(const Segment& s, const Segment& t);

}  // namespace tanglab
