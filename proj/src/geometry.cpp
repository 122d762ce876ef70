#include "tanglab/geometry.hpp"

#include <stdexcept>

namespace tanglab {

int orient(const Point& a, const Point& b, const Point& c) {
    Rational cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return sign_of(cross);
}

bool point_on_segment(const Point& p, const Segment& s) {
    if (orient(s.a, s.b, p) != 0) return false;
    return rat_min(s.a.x, s.b.x) <= p.x && p.x <= rat_max(s.a.x, s.b.x) &&
           rat_min(s.a.y, s.b.y) <= p.y && p.y <= rat_max(s.a.y, s.b.y);
}

static bool interval_overlap(const Rational& a0, const Rational& a1,
                             const Rational& b0, const Rational& b1,
                             Rational& lo, Rational& hi) {
    lo = rat_max(rat_min(a0, a1), rat_min(b0, b1));
    hi = rat_min(rat_max(a0, a1), rat_max(b0, b1));
    return lo <= hi;
}

IntersectionResult segment_intersect(const Segment& s, const Segment& t) {
    IntersectionResult res;
    int o1 = orient(s.a, s.b, t.a);
    int o2 = orient(s.a, s.b, t.b);
    int o3 = orient(t.a, t.b, s.a);
    int o4 = orient(t.a, t.b, s.b);

    if (o1 == 0 && o2 == 0) {
        // Collinear: intersect the parameter intervals on the dominant axis.
        Rational dx = rat_abs(s.b.x - s.a.x);
        Rational dy = rat_abs(s.b.y - s.a.y);
        bool use_x = dx >= dy;
        Rational lo, hi;
        bool hit = use_x
            ? interval_overlap(s.a.x, s.b.x, t.a.x, t.b.x, lo, hi)
            : interval_overlap(s.a.y, s.b.y, t.a.y, t.b.y, lo, hi);
        if (!hit) return res;
        auto at = [&](const Rational& c) -> Point {
            if (use_x) {
                if (dx == 0) return s.a;
                Rational u = (c - s.a.x) / (s.b.x - s.a.x);
                return Point{c, s.a.y + u * (s.b.y - s.a.y)};
            }
            if (dy == 0) return s.a;
            Rational u = (c - s.a.y) / (s.b.y - s.a.y);
            return Point{s.a.x + u * (s.b.x - s.a.x), c};
        };
        if (lo == hi) {
            res.kind = IntersectionResult::Single;
            res.point = at(lo);
        } else {
            res.kind = IntersectionResult::Overlap;
            res.overlap = Segment{at(lo), at(hi)};
        }
        return res;
    }

    if (o1 * o2 <= 0 && o3 * o4 <= 0) {
        // Proper or endpoint intersection at a single point.
        Rational d1x = s.b.x - s.a.x, d1y = s.b.y - s.a.y;
        Rational d2x = t.b.x - t.a.x, d2y = t.b.y - t.a.y;
        Rational denom = d1x * d2y - d1y * d2x;
        if (denom == 0) {
            // Parallel non-collinear with touching boxes: only possible if an
            // endpoint lies on the other segment, which collinearity excluded.
            return res;
        }
        Rational u = ((t.a.x - s.a.x) * d2y - (t.a.y - s.a.y) * d2x) / denom;
        if (u < 0 || u > 1) return res;
        Point p{s.a.x + u * d1x, s.a.y + u * d1y};
        if (!point_on_segment(p, t)) return res;
        res.kind = IntersectionResult::Single;
        res.point = p;
    }
    return res;
}

std::optional<Point> line_intersect(const Line& a, const Line& b) {
    if (a.slope == b.slope) return std::nullopt;
    Rational x = (b.intercept - a.intercept) / (a.slope - b.slope);
    return Point{x, a.y_at(x)};
}

Point line_second_circle_intersection(const Point& center, const Rational& r,
                                      const Point& base, const Rational& slope) {
    if (r <= 0) throw std::invalid_argument("circle radius must be positive");
    if (base.x != center.x || base.y != center.y - r)
        throw std::invalid_argument("base must be the bottommost circle point");
    if (slope == 0)
        throw std::invalid_argument("horizontal line meets the circle only at its base point");
    Rational s2 = slope * slope;
    Rational den = 1 + s2;
    return Point{center.x + 2 * r * slope / den,
                 center.y - r + 2 * r * s2 / den};
}

bool Polyline::valid_chain(std::string* why) const {
    if (vertices.size() < 2) {
        if (why) *why = "fewer than 2 vertices";
        return false;
    }
    for (size_t i = 1; i < vertices.size(); ++i) {
        if (vertices[i] == vertices[i - 1]) {
            if (why) *why = "repeated consecutive vertex at index " + std::to_string(i);
            return false;
        }
    }
    for (size_t i = 2; i < vertices.size(); ++i) {
        const Point& a = vertices[i - 2];
        const Point& b = vertices[i - 1];
        const Point& c = vertices[i];
        if (orient(a, b, c) == 0) {
            // Collinear is fine on a straight run, doubling back is not.
            Rational dot = (b.x - a.x) * (c.x - b.x) + (b.y - a.y) * (c.y - b.y);
            if (dot <= 0) {
                if (why) *why = "doubling back at index " + std::to_string(i - 1);
                return false;
            }
        }
    }
    return true;
}

static int quadrant(const Point& d) {
    // Quadrants counterclockwise from the positive x axis, boundaries
    // belonging to the lower-numbered region.
    if (d.x > 0 && d.y >= 0) return 0;
    if (d.x <= 0 && d.y > 0) return 1;
    if (d.x < 0 && d.y <= 0) return 2;
    if (d.x >= 0 && d.y < 0) return 3;
    throw std::invalid_argument("zero direction vector");
}

int compare_directions(const Point& u, const Point& v) {
    int qu = quadrant(u), qv = quadrant(v);
    if (qu != qv) return qu < qv ? -1 : 1;
    Rational cross = u.x * v.y - u.y * v.x;
    int s = sign_of(cross);
    return s > 0 ? -1 : (s < 0 ? 1 : 0);
}

Rational dist2(const Point& a, const Point& b) {
    Rational dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

Rational point_line_dist2(const Point& p, const Line& l) {
    Rational e = l.slope * p.x + l.intercept - p.y;
    return e * e / (1 + l.slope * l.slope);
}

Rational point_segment_dist2(const Point& p, const Segment& s) {
    Rational dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
    Rational len2 = dx * dx + dy * dy;
    if (len2 == 0) return dist2(p, s.a);
    Rational t = ((p.x - s.a.x) * dx + (p.y - s.a.y) * dy) / len2;
    if (t < 0) t = 0;
    if (t > 1) t = 1;
    Point q{s.a.x + t * dx, s.a.y + t * dy};
    return dist2(p, q);
}

Rational segment_dist2(const Segment& s, const Segment& t) {
    if (segment_intersect(s, t).kind != IntersectionResult::Empty) return Rational(0);
    Rational best = point_segment_dist2(s.a, t);
    best = rat_min(best, point_segment_dist2(s.b, t));
    best = rat_min(best, point_segment_dist2(t.a, s));
    best = rat_min(best, point_segment_dist2(t.b, s));
    return best;
}

}  // namespace tanglab
