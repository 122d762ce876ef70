#include "tanglab/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <cstdio>
#include <cstdlib>

namespace tanglab {

namespace {

Point rot_ccw(const Point& u) { return Point{-u.y, u.x}; }

// Angular order counterclockwise starting straight down (where the disk
// bottom sits).
int cmp_from_down(const Point& u, const Point& v) {
    return compare_directions(rot_ccw(u), rot_ccw(v));
}

Rational linf(const Point& d) {
    Rational m = rat_max(rat_abs(d.x), rat_abs(d.y));
    if (m == 0) throw std::invalid_argument("zero vector");
    return m;
}

Point vadd(const Point& a, const Point& b) { return Point{a.x + b.x, a.y + b.y}; }
Point vsub(const Point& a, const Point& b) { return Point{a.x - b.x, a.y - b.y}; }

Point scale_vec(const Point& d, const Rational& w) {
    Rational s = w / linf(d);
    return Point{d.x * s, d.y * s};
}

// Offset shift for a directed segment: side +1 is left of travel.
Point shift_vec(const Point& d, int side, const Rational& w) {
    Point n{-d.y, d.x};
    Point s = scale_vec(n, w);
    if (side < 0) return Point{-s.x, -s.y};
    return s;
}

Rational cross2(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
Rational dot2(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }

std::optional<Point> line_through_intersect(const Point& a1, const Point& d1,
                                            const Point& a2, const Point& d2) {
    Rational den = cross2(d1, d2);
    if (den == 0) return std::nullopt;
    Rational t = cross2(vsub(a2, a1), d2) / den;
    return Point{a1.x + t * d1.x, a1.y + t * d1.y};
}

struct DiskGeom {
    int point_index = -1;
    Point bottom, center;
    Rational radius;
    std::vector<Point> cycle;              // convex polygon, ccw from bottom
    std::map<int, int> anchor_pos;         // original line index -> cycle position
    std::vector<std::pair<int, Point>> anchors_by_placement;
    int top_pos = -1;
};

DiskGeom build_disk(const PointLineSystem& sys, int point_index, const Rational& r,
                    const std::vector<int>& incident_lines_by_placement) {
    DiskGeom g;
    g.point_index = point_index;
    g.bottom = sys.points[point_index];
    g.center = Point{g.bottom.x, g.bottom.y + r};
    g.radius = r;

    struct Vtx { Point p; int line = -1; bool top = false; };
    std::vector<Vtx> vs;
    vs.push_back({g.bottom, -1, false});
    std::vector<Rational> used_slopes;
    {
        Rational prev_slope;
        bool first = true;
        for (int li : incident_lines_by_placement) {
            const Rational& s = sys.lines[li].slope;
            if (!first && !(prev_slope < s))
                throw RoutingError("anchors not in counterclockwise order at point " +
                                   std::to_string(point_index));
            prev_slope = s;
            first = false;
            Point a = line_second_circle_intersection(g.center, r, g.bottom, s);
            vs.push_back({a, li, false});
            used_slopes.push_back(s);
        }
    }
    auto add_filler = [&](long num, long den) {
        Rational s = rat(num, den);
        for (const auto& u : used_slopes)
            if (u == s) return;
        vs.push_back({line_second_circle_intersection(g.center, r, g.bottom, s), -1, false});
    };
    add_filler(1, 3); add_filler(1, 1); add_filler(3, 1);
    add_filler(-3, 1); add_filler(-1, 1); add_filler(-1, 3);
    vs.push_back({Point{g.center.x, g.center.y + r}, -1, true});

    std::sort(vs.begin(), vs.end(), [&](const Vtx& a, const Vtx& b) {
        if (a.p == g.bottom) return b.p != g.bottom;
        if (b.p == g.bottom) return false;
        return cmp_from_down(vsub(a.p, g.center), vsub(b.p, g.center)) < 0;
    });
    for (size_t i = 0; i < vs.size(); ++i) {
        g.cycle.push_back(vs[i].p);
        if (vs[i].line >= 0) g.anchor_pos[vs[i].line] = static_cast<int>(i);
        if (vs[i].top) g.top_pos = static_cast<int>(i);
    }
    for (int li : incident_lines_by_placement)
        g.anchors_by_placement.emplace_back(li, g.cycle[g.anchor_pos.at(li)]);
    return g;
}

// ---- obstacle index ------------------------------------------------------

enum class ObKind : uint8_t { Red, Polygon, Vertical };

struct ObSeg {
    Point a, b;
    ObKind kind;
    int owner;  // red: placement position; polygon/vertical: disk index
    int seg;
};

struct RouterGrid {
    double x0 = 0, y0 = 0, cell = 1;
    std::unordered_map<uint64_t, std::vector<uint32_t>> cells;
    std::vector<ObSeg> segs;
    std::vector<uint32_t> stamp;
    uint32_t epoch = 0;

    void init(const Box& box) {
        cells.clear();
        segs.clear();
        stamp.clear();
        epoch = 0;
        double xmin = rat_double(box.xmin) - 2, xmax = rat_double(box.xmax) + 2;
        double ymin = rat_double(box.ymin) - 2, ymax = rat_double(box.ymax) + 2;
        x0 = xmin; y0 = ymin;
        cell = std::max(std::max(xmax - xmin, ymax - ymin) / 256.0, 1e-9);
    }

    static uint64_t key(int64_t cx, int64_t cy) {
        return (static_cast<uint64_t>(cx) << 32) ^ (static_cast<uint64_t>(cy) & 0xffffffffULL);
    }

    template <class F>
    void visit_range(const Point& a, const Point& b, F&& f) const {
        double ax = rat_double(a.x), ay = rat_double(a.y);
        double bx = rat_double(b.x), by = rat_double(b.y);
        double xlo = std::min(ax, bx) - 1e-9, xhi = std::max(ax, bx) + 1e-9;
        double ylo = std::min(ay, by) - 1e-9, yhi = std::max(ay, by) + 1e-9;
        int64_t cx0 = static_cast<int64_t>(std::floor((xlo - x0) / cell));
        int64_t cx1 = static_cast<int64_t>(std::floor((xhi - x0) / cell));
        int64_t cy0 = static_cast<int64_t>(std::floor((ylo - y0) / cell));
        int64_t cy1 = static_cast<int64_t>(std::floor((yhi - y0) / cell));
        for (int64_t cx = cx0; cx <= cx1; ++cx)
            for (int64_t cy = cy0; cy <= cy1; ++cy) f(key(cx, cy));
    }

    void insert(const ObSeg& s) {
        uint32_t idx = static_cast<uint32_t>(segs.size());
        segs.push_back(s);
        stamp.push_back(0);
        visit_range(s.a, s.b, [&](uint64_t k) { cells[k].push_back(idx); });
    }

    template <class F>
    void query(const Point& a, const Point& b, F&& f) {
        ++epoch;
        visit_range(a, b, [&](uint64_t k) {
            auto it = cells.find(k);
            if (it == cells.end()) return;
            for (uint32_t idx : it->second) {
                if (stamp[idx] == epoch) continue;
                stamp[idx] = epoch;
                f(segs[idx]);
            }
        });
    }
};

// ---- router --------------------------------------------------------------

struct DiskStopSignal {
    Point at;
    int ring_edge;
};

struct Router {
    const PointLineSystem& sys;
    const Box& box;
    const RoutingParams& params;
    const std::vector<DiskGeom>& disks;

    std::vector<int> placement;              // placement position -> line index
    std::vector<std::vector<int>> pins;      // placement position -> disk indices (by x)
    std::vector<std::vector<Point>> bodies;  // committed red bodies by placement
    RouterGrid grid;
    Rational band_eta;
    Rational glide_slope;

    // per-curve state
    int cur = -1;
    Line cur_line;
    std::vector<Point> out;
    int pending_pin = -1;                    // disk index
    int cur_hug_disk = -1;
    std::vector<Segment> ring;               // scaled cycle of the pending pin
    long emitted_guard = 0;

    Rational offset_of(int p) const { return params.per_curve_offset.at(p); }

    Rational ring_factor(int p) const {
        return 1 + offset_of(p) / (4 * disks.front().radius);
    }

    void rebuild_grid(int bodies_upto) {
        grid.init(box);
        for (size_t j = 0; j < disks.size(); ++j) {
            const auto& cyc = disks[j].cycle;
            for (size_t e = 0; e < cyc.size(); ++e)
                grid.insert(ObSeg{cyc[e], cyc[(e + 1) % cyc.size()], ObKind::Polygon,
                                  static_cast<int>(j), static_cast<int>(e)});
            grid.insert(ObSeg{Point{disks[j].center.x, disks[j].center.y + disks[j].radius},
                              Point{disks[j].center.x, box.ymax}, ObKind::Vertical,
                              static_cast<int>(j), 0});
        }
        for (int p = 0; p < bodies_upto; ++p)
            for (size_t s = 0; s + 1 < bodies[p].size(); ++s)
                grid.insert(ObSeg{bodies[p][s], bodies[p][s + 1], ObKind::Red, p,
                                  static_cast<int>(s)});
    }

    void build_ring(int disk_idx) {
        ring.clear();
        const DiskGeom& g = disks[disk_idx];
        Rational f = ring_factor(cur);
        std::vector<Point> sc;
        for (const auto& v : g.cycle)
            sc.push_back(Point{g.center.x + f * (v.x - g.center.x),
                               g.center.y + f * (v.y - g.center.y)});
        for (size_t i = 0; i < sc.size(); ++i)
            ring.push_back(Segment{sc[i], sc[(i + 1) % sc.size()]});
    }

    void commit(const Point& q) {
        if (!out.empty() && out.back() == q) return;
        if (++emitted_guard > 400000) throw RoutingError("routing emitted too many vertices");
        if (!out.empty())
            grid.insert(ObSeg{out.back(), q, ObKind::Red, cur,
                              static_cast<int>(out.size()) - 1});
        out.push_back(q);
    }

    struct Contact {
        bool found = false;
        Rational t;
        ObSeg seg;
        Point at;
    };

    static Rational param_along(const Point& P, const Point& Q, const Point& X) {
        Point d = vsub(Q, P);
        Rational den = dot2(d, d);
        return dot2(vsub(X, P), d) / den;
    }

    Contact earliest_contact(const Point& P, const Point& Q, int depth) {
        Contact best;
        Segment prop{P, Q};
        grid.query(P, Q, [&](const ObSeg& s) {
            if (s.kind == ObKind::Vertical) return;
            if (s.kind == ObKind::Polygon) {
                if (depth > 0) return;
                if (s.owner == cur_hug_disk) return;
            }
            if (s.kind == ObKind::Red && s.owner == cur &&
                s.seg == static_cast<int>(out.size()) - 2)
                return;
            IntersectionResult r = segment_intersect(prop, Segment{s.a, s.b});
            if (r.kind == IntersectionResult::Empty) return;
            if (r.kind == IntersectionResult::Single && r.point == P)
                return;  // departing a sanctioned touch point (anchor, landing)
            Point hit = r.kind == IntersectionResult::Single ? r.point
                : (param_along(P, Q, r.overlap.a) <= param_along(P, Q, r.overlap.b)
                       ? r.overlap.a : r.overlap.b);
            Rational t = param_along(P, Q, hit);
            if (t < 0) t = 0;
            if (!best.found || t < best.t) {
                best.found = true;
                best.t = t;
                best.seg = s;
                best.at = hit;
            }
        });
        return best;
    }

    enum class StepKind { Reached, Landed };
    struct StepResult {
        StepKind kind = StepKind::Reached;
        Point at;
    };

    // Push the trace from its current end toward T, wrapping whatever it
    // touches. `carrier` is the parent path this excursion lands back on the
    // moment it is re-crossed; `arm_ring` activates the pending pin's guard.
    StepResult advance(const Point& T, int depth, const Rational& w_parent,
                       const Segment* carrier, bool arm_ring) {
        int spins = 0;
        for (;;) {
            if (++spins > 8000) throw RoutingError("advance failed to make progress");
            Point P = out.back();
            if (P == T) return {StepKind::Reached, P};

            Contact c = earliest_contact(P, T, depth);
            bool have_land = false;
            Rational t_land;
            Point land_pt;
            if (carrier) {
                IntersectionResult r = segment_intersect(Segment{P, T}, *carrier);
                if (r.kind == IntersectionResult::Single && !(r.point == carrier->a)) {
                    Rational t = param_along(P, T, r.point);
                    if (t > 0 || r.point == P) {
                        have_land = true;
                        t_land = t;
                        land_pt = r.point;
                    }
                }
            }
            bool have_ring = false;
            Rational t_ring;
            Point ring_pt;
            int ring_edge = -1;
            if (arm_ring && pending_pin >= 0) {
                for (size_t e = 0; e < ring.size(); ++e) {
                    IntersectionResult r = segment_intersect(Segment{P, T}, ring[e]);
                    if (r.kind != IntersectionResult::Single) continue;
                    Rational t = param_along(P, T, r.point);
                    if (t <= 0) continue;
                    if (!have_ring || t < t_ring) {
                        have_ring = true;
                        t_ring = t;
                        ring_pt = r.point;
                        ring_edge = static_cast<int>(e);
                    }
                }
            }

            // Earliest of landing / ring / contact wins.
            if (have_land && (!c.found || t_land <= c.t) && (!have_ring || t_land <= t_ring)) {
                commit(land_pt);
                return {StepKind::Landed, land_pt};
            }
            if (have_ring && (!c.found || t_ring <= c.t)) {
                commit(ring_pt);
                throw DiskStopSignal{ring_pt, ring_edge};
            }
            if (!c.found) {
                commit(T);
                return {StepKind::Reached, T};
            }

            if (std::getenv("TANGLAB_TRACE"))
                std::fprintf(stderr,
                             "contact: cur=%d depth=%d ob=(%d kind %d) seg=%d at=(%.6f,%.6f) "
                             "P=(%.6f,%.6f) T=(%.6f,%.6f)\n",
                             cur, depth, c.seg.owner, static_cast<int>(c.seg.kind), c.seg.seg,
                             rat_double(c.at.x), rat_double(c.at.y), rat_double(P.x),
                             rat_double(P.y), rat_double(T.x), rat_double(T.y));

            // Contact: step off the path shy of the obstacle and wrap it.
            if (c.seg.kind == ObKind::Polygon)
                throw RoutingError("path ran into disk polygon " + std::to_string(c.seg.owner));
            if (c.seg.kind == ObKind::Red && c.seg.owner == cur) {
                if (std::getenv("TANGLAB_TRACE")) {
                    std::fprintf(stderr, "self-touch: own seg %d = (%.12f,%.12f)->(%.12f,%.12f)\n",
                                 c.seg.seg, rat_double(c.seg.a.x), rat_double(c.seg.a.y),
                                 rat_double(c.seg.b.x), rat_double(c.seg.b.y));
                    size_t lo = out.size() > 14 ? out.size() - 14 : 0;
                    for (size_t vi = lo; vi < out.size(); ++vi)
                        std::fprintf(stderr, "  out[%zu] (%.12f, %.12f)\n", vi,
                                     rat_double(out[vi].x), rat_double(out[vi].y));
                }
                throw RoutingError("trace touched itself");
            }
            if (c.t == 0)
                throw RoutingError("trace starts on an obstacle");

            Point A = c.seg.a, B = c.seg.b;
            int side = orient(A, B, P);
            if (side == 0)
                throw RoutingError("collinear approach to obstacle");
            Point d = vsub(B, A);
            Rational w = depth == 0 ? offset_of(cur) : w_parent / 4;
            // Signed-area clearance of P over the obstacle line.
            Rational fP = rat_abs(cross2(d, vsub(P, A)));
            Rational need = w * dot2(d, d) / linf(d);
            if (fP <= need) {
                w = w * fP / (2 * need);
                need = w * dot2(d, d) / linf(d);
            }
            Rational u = 1 - need / fP;
            Point leave{P.x + u * (c.at.x - P.x), P.y + u * (c.at.y - P.y)};
            commit(leave);
            Segment child_carrier{leave, T};
            wrap(c.seg.owner, c.seg.seg, side, w, child_carrier, depth + 1);
        }
    }

    // Offset-follow the obstacle body to its right end, swing around it, and
    // come back on the far side until the carrier is crossed again.
    Point wrap(int ob, int hit_seg, int side, const Rational& w, const Segment& carrier,
               int depth) {
        if (depth > 48) throw RoutingError("wrap nesting too deep");
        const std::vector<Point>& body = bodies[ob];
        int m = static_cast<int>(body.size()) - 1;  // last vertex index

        // Features of the followed body finer than the offset are engulfed by
        // the corridor anyway; walking them verbatim only produces junk
        // elbows, so coarsen to the offset scale.
        Rational thresh2 = (w / 8) * (w / 8);
        std::vector<int> stops;
        {
            Point ref = body[hit_seg];
            for (int idx = hit_seg + 1; idx <= m - 1; ++idx)
                if (dist2(body[idx], ref) >= thresh2) {
                    stops.push_back(idx);
                    ref = body[idx];
                }
            while (!stops.empty() && dist2(body[stops.back()], body[m]) < thresh2)
                stops.pop_back();
        }

        auto go = [&](const Point& T, bool back_phase) -> bool {
            StepResult s = advance(T, depth, w, &carrier, back_phase);
            return s.kind == StepKind::Landed;
        };

        auto elbow = [&](const Point& v, const Point& d1, const Point& d2,
                         bool back_phase) -> bool {
            Rational cr = cross2(d1, d2);
            if (cr == 0) return false;  // straight run
            int turn = sign_of(cr);
            Point s1 = shift_vec(d1, side, w), s2 = shift_vec(d2, side, w);
            if (turn == side) {
                auto X = line_through_intersect(vadd(v, s1), d1, vadd(v, s2), d2);
                if (!X) throw RoutingError("degenerate miter");
                return go(*X, back_phase);
            }
            if (dot2(d1, d2) >= 0) {
                if (dist2(s1, s2) < thresh2) return go(vadd(v, s2), back_phase);
                if (go(vadd(v, s1), back_phase)) return true;
                return go(vadd(v, s2), back_phase);
            }
            Point ext = scale_vec(d1, w);
            if (go(vadd(v, s1), back_phase)) return true;
            if (go(vadd(vadd(v, s1), ext), back_phase)) return true;
            if (go(vadd(vadd(v, s2), ext), back_phase)) return true;
            return go(vadd(v, s2), back_phase);
        };

        // Forward along the approach side. Landing may already strike here:
        // the body being followed can loop back across the pending path (a
        // descent pendant), and the trace resumes the moment it does.
        {
            int prev = hit_seg;
            for (size_t t = 0; t < stops.size(); ++t) {
                int idx = stops[t];
                int next = t + 1 < stops.size() ? stops[t + 1] : m;
                if (elbow(body[idx], vsub(body[idx], body[prev]),
                          vsub(body[next], body[idx]), false))
                    return out.back();
                prev = idx;
            }
        }

        // Cap around the right endpoint, then return on the far side; the far
        // side is `side` again relative to the reversed walk.
        {
            int prev = stops.empty() ? hit_seg : stops.back();
            Point d = vsub(body[m], body[prev]);
            Point ext = scale_vec(d, w);
            Point s1 = shift_vec(d, side, w);
            Point rd{-d.x, -d.y};
            Point s2 = shift_vec(rd, side, w);
            if (go(vadd(body[m], s1), false)) return out.back();
            if (go(vadd(vadd(body[m], s1), ext), true)) return out.back();
            if (go(vadd(vadd(body[m], s2), ext), true)) return out.back();
            if (go(vadd(body[m], s2), true)) return out.back();
        }

        {
            std::vector<int> back_stops;
            Point ref = body[m];
            for (int idx = m - 1; idx >= 1; --idx)
                if (dist2(body[idx], ref) >= thresh2) {
                    back_stops.push_back(idx);
                    ref = body[idx];
                }
            int prev = m;
            for (size_t t = 0; t < back_stops.size(); ++t) {
                int idx = back_stops[t];
                int next = t + 1 < back_stops.size() ? back_stops[t + 1] : 0;
                if (elbow(body[idx], vsub(body[idx], body[prev]),
                          vsub(body[next], body[idx]), true))
                    return out.back();
                prev = idx;
            }
            // Final leg beside the obstacle's first segment.
            Point d = vsub(body[0], body[prev]);
            if (go(vadd(body[0], shift_vec(d, side, w)), true)) return out.back();
        }

        throw RoutingError("wrap around curve " + std::to_string(ob) +
                           " never crossed back over its carrier (tracing curve " +
                           std::to_string(cur) + ", hit segment " + std::to_string(hit_seg) +
                           ", side " + std::to_string(side) + ", depth " +
                           std::to_string(depth) + ", carrier (" + rat_str(carrier.a.x) + "," +
                           rat_str(carrier.a.y) + ")->(" + rat_str(carrier.b.x) + "," +
                           rat_str(carrier.b.y) + "))");
    }
};

// ---- placement helpers -----------------------------------------------------

std::vector<int> placement_order(const PointLineSystem& sys, const Box& box) {
    std::vector<int> order(sys.lines.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        Rational ya = sys.lines[a].y_at(box.xmin);
        Rational yb = sys.lines[b].y_at(box.xmin);
        if (ya != yb) return ya > yb;  // topmost first
        return a < b;
    });
    return order;
}

std::vector<DiskGeom> build_disks(const PointLineSystem& sys, const Box& box,
                                  const Rational& r) {
    std::vector<int> order = placement_order(sys, box);
    std::vector<int> place_of(sys.lines.size());
    for (size_t p = 0; p < order.size(); ++p) place_of[order[p]] = static_cast<int>(p);

    std::vector<std::vector<int>> lines_at_point(sys.points.size());
    for (const auto& [li, pi] : sys.incidences) lines_at_point[pi].push_back(li);
    for (auto& ls : lines_at_point)
        std::sort(ls.begin(), ls.end(),
                  [&](int a, int b) { return place_of[a] < place_of[b]; });

    std::vector<DiskGeom> disks;
    for (size_t j = 0; j < sys.points.size(); ++j)
        disks.push_back(build_disk(sys, static_cast<int>(j), r, lines_at_point[j]));
    return disks;
}

Curve blue_curve_from_disk(const DiskGeom& g, const Box& box, int id) {
    Curve c;
    c.id = id;
    c.color = Color::Blue;
    c.source = g.point_index;
    int n = static_cast<int>(g.cycle.size());
    // Walk the cycle from just past the top, around the bottom, back to the
    // top, then rise to the top side: the edge next to the top is the opened
    // arc.
    for (int i = 1; i <= n; ++i)
        c.polyline.vertices.push_back(g.cycle[(g.top_pos + i) % n]);
    c.polyline.vertices.push_back(Point{g.center.x, box.ymax});
    return c;
}

}  // namespace

// ---- box and radius --------------------------------------------------------

Box compute_box(const PointLineSystem& sys) {
    if (sys.points.empty() || sys.lines.empty())
        throw std::invalid_argument("empty system");
    bool have = false;
    Rational xmin, xmax, ymin, ymax;
    auto feed = [&](const Point& p) {
        if (!have) {
            xmin = xmax = p.x;
            ymin = ymax = p.y;
            have = true;
            return;
        }
        xmin = rat_min(xmin, p.x); xmax = rat_max(xmax, p.x);
        ymin = rat_min(ymin, p.y); ymax = rat_max(ymax, p.y);
    };
    for (const auto& p : sys.points) feed(p);
    for (size_t i = 0; i < sys.lines.size(); ++i)
        for (size_t j = i + 1; j < sys.lines.size(); ++j)
            if (auto q = line_intersect(sys.lines[i], sys.lines[j])) feed(*q);
    Box box;
    box.xmin = xmin - 1;
    box.xmax = xmax + 1;
    Rational ylo = ymin, yhi = ymax;
    for (const auto& l : sys.lines) {
        ylo = rat_min(ylo, l.y_at(box.xmin));
        yhi = rat_max(yhi, l.y_at(box.xmax));
    }
    box.ymin = ylo - 1;
    box.ymax = yhi + 1;
    return box;
}

Rational choose_disk_radius(const PointLineSystem& sys, const Box& box) {
    const auto& pts = sys.points;
    if (pts.empty()) throw std::invalid_argument("no points");
    bool have_lin = false, have_sq = false;
    Rational lin, sq;
    auto feed_lin = [&](const Rational& b) {
        if (b <= 0) throw std::invalid_argument("degenerate bound in radius choice");
        if (!have_lin || b < lin) { lin = b; have_lin = true; }
    };
    auto feed_sq = [&](const Rational& b) {
        if (b <= 0) throw std::invalid_argument("degenerate squared bound in radius choice");
        if (!have_sq || b < sq) { sq = b; have_sq = true; }
    };

    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) {
            Rational d2 = dist2(pts[i], pts[j]);
            if (d2 == 0) throw std::invalid_argument("coincident points");
            feed_sq(d2 / 16);                                // disjoint disks
            Rational dx = rat_abs(pts[i].x - pts[j].x);
            if (dx > 0) feed_lin(dx / 4);                    // x-separated columns
        }
    for (size_t j = 0; j < pts.size(); ++j)
        for (const auto& l : sys.lines)
            if (!l.contains(pts[j]))
                feed_sq(point_line_dist2(pts[j], l) * rat(4, 25));  // clear of foreign lines
    for (const auto& p : pts) {
        feed_lin(p.x - box.xmin);
        feed_lin(box.xmax - p.x);
        feed_lin((box.ymax - p.y) / 2);                      // disk inside box
    }
    std::vector<Point> crossings;
    for (size_t i = 0; i < sys.lines.size(); ++i)
        for (size_t j = i + 1; j < sys.lines.size(); ++j)
            if (auto q = line_intersect(sys.lines[i], sys.lines[j])) crossings.push_back(*q);
    for (const auto& p : pts)
        for (const auto& q : crossings) {
            Rational d2 = dist2(p, q);
            if (d2 > 0) feed_sq(d2 / 4);                     // no foreign crossings inside
        }

    Rational r = have_lin ? lin : rat(1);
    if (have_sq) r = rat_min(r, rat_sqrt_under(sq));
    return r / 2;
}

// ---- blue curves -----------------------------------------------------------

BlueSynthesis synth_blue_curves(const PointLineSystem& sys, const Box& box, const Rational& r) {
    BlueSynthesis out;
    std::vector<DiskGeom> disks = build_disks(sys, box, r);
    int n = static_cast<int>(sys.lines.size());
    for (size_t j = 0; j < disks.size(); ++j) {
        Curve c = blue_curve_from_disk(disks[j], box, n + static_cast<int>(j));
        DiskSpec spec;
        spec.point_index = disks[j].point_index;
        spec.center = disks[j].center;
        spec.radius = r;
        spec.anchors = disks[j].anchors_by_placement;
        for (int i = 0; i < static_cast<int>(disks[j].cycle.size()); ++i) {
            bool is_anchor = false;
            for (const auto& [li, a] : spec.anchors)
                if (disks[j].cycle[i] == a) is_anchor = true;
            if (!is_anchor && !(disks[j].cycle[i] == disks[j].bottom))
                spec.filler_vertices.push_back(disks[j].cycle[i]);
        }
        out.disks.push_back(std::move(spec));
        out.curves.push_back(std::move(c));
    }
    return out;
}

// ---- routing parameters ----------------------------------------------------

RoutingParams default_routing_params(const PointLineSystem& sys, const Box& box,
                                     const Rational& r) {
    int n = static_cast<int>(sys.lines.size());
    std::vector<int> order = placement_order(sys, box);
    Rational gap = r;
    for (size_t p = 1; p < order.size(); ++p) {
        Rational d = sys.lines[order[p - 1]].y_at(box.xmin) -
                     sys.lines[order[p]].y_at(box.xmin);
        gap = rat_min(gap, d);
    }
    Rational ceiling = sys.lines.front().y_at(box.xmin);
    for (const auto& l : sys.lines) ceiling = rat_min(ceiling, l.y_at(box.xmin));
    for (const auto& p : sys.points) ceiling = rat_min(ceiling, p.y);
    Rational eta = (ceiling - box.ymin) / (n + 2);
    RoutingParams params;
    params.min_feature_gap = rat_min(rat_min(gap, eta), rat(1));
    params.base_offset = params.min_feature_gap / (8 * (n + 2));
    // Geometric decay: each curve follows earlier bodies more tightly than
    // any corridor they left behind, with room for the metric slack of the
    // axis-scaled offsets.
    Rational w = params.base_offset / 4;
    for (int p = 0; p < n; ++p) {
        params.per_curve_offset[p] = w;
        w = w / 4;
    }
    return params;
}

// ---- red routing -----------------------------------------------------------

namespace {

// Collinear forward runs merge unconditionally: the chord equals the union of
// the segments it replaces, so no intersection anywhere can change.
void merge_collinear(std::vector<Point>& body, const std::set<size_t>& pinned) {
    std::vector<Point> keep;
    for (size_t i = 0; i < body.size(); ++i) {
        if (!pinned.count(i) && keep.size() >= 1 && i + 1 < body.size()) {
            const Point& a = keep.back();
            const Point& b = body[i];
            const Point& c = body[i + 1];
            if (orient(a, b, c) == 0 &&
                (b.x - a.x) * (c.x - b.x) + (b.y - a.y) * (c.y - b.y) > 0)
                continue;
        }
        keep.push_back(body[i]);
    }
    body = keep;
}

// Chord shortcuts must keep a corridor of width `margin` free around every
// obstacle so that later curves can still route beside this body.
void simplify_body(Router& rt, std::vector<Point>& body, const std::set<size_t>& pinned_pts,
                   const Rational& margin) {
    const Line& line = rt.cur_line;
    Rational margin2 = margin * margin;

    std::set<size_t> pinned = pinned_pts;
    if (body.size() >= 3) {
        std::vector<Point> keep;
        keep.push_back(body[0]);
        size_t i = 0;
        while (i + 1 < body.size()) {
            size_t best = i + 1;
            size_t hi = std::min(body.size() - 1, i + 128);
            for (size_t j = hi; j > i + 1; --j) {
                bool pinned_between = false;
                for (size_t t = i + 1; t < j && !pinned_between; ++t)
                    if (pinned.count(t)) pinned_between = true;
                if (pinned_between) continue;
                if (body[j].y > line.y_at(body[j].x)) continue;
                Segment cand{body[i], body[j]};
                bool clear = true;
                rt.grid.query(cand.a, cand.b, [&](const ObSeg& s) {
                    if (!clear) return;
                    if (s.kind == ObKind::Red && s.owner == rt.cur &&
                        s.seg >= static_cast<int>(i) - 1 && s.seg <= static_cast<int>(j))
                        return;  // replaced or adjacent portion of the raw chain
                    if (segment_dist2(cand, Segment{s.a, s.b}) < margin2) clear = false;
                });
                if (!clear) continue;
                for (size_t kseg = 0; kseg + 1 < keep.size() && clear; ++kseg) {
                    IntersectionResult r =
                        segment_intersect(cand, Segment{keep[kseg], keep[kseg + 1]});
                    if (r.kind == IntersectionResult::Empty) continue;
                    if (r.kind == IntersectionResult::Single && r.point == cand.a) continue;
                    clear = false;
                }
                if (!clear) continue;
                best = j;
                break;
            }
            keep.push_back(body[best]);
            // Remap pin positions past the skipped stretch.
            i = best;
        }
        // Rebuild the pin set against the kept vertices for the collinear pass.
        std::set<size_t> new_pins;
        for (size_t t = 0; t < keep.size(); ++t)
            for (size_t p : pinned)
                if (p < body.size() && keep[t] == body[p]) new_pins.insert(t);
        body = keep;
        pinned = new_pins;
    }
    merge_collinear(body, pinned);
}

}  // namespace

std::vector<Curve> synth_red_curves(const PointLineSystem& sys, const Box& box,
                                    const BlueSynthesis& blue, const RoutingParams& params) {
    int n = static_cast<int>(sys.lines.size());
    const Rational& r = blue.disks.front().radius;
    std::vector<DiskGeom> disks = build_disks(sys, box, r);

    Router rt{sys, box, params, disks};
    rt.placement = placement_order(sys, box);
    std::vector<int> place_of(n);
    for (int p = 0; p < n; ++p) place_of[rt.placement[p]] = p;

    rt.pins.assign(n, {});
    for (size_t j = 0; j < disks.size(); ++j)
        for (const auto& [li, a] : disks[j].anchors_by_placement)
            rt.pins[place_of[li]].push_back(static_cast<int>(j));
    for (auto& ps : rt.pins)
        std::sort(ps.begin(), ps.end(), [&](int a, int b) {
            return disks[a].bottom.x < disks[b].bottom.x;
        });

    Rational ceiling = sys.lines.front().y_at(box.xmin);
    for (const auto& l : sys.lines) ceiling = rat_min(ceiling, l.y_at(box.xmin));
    for (const auto& p : sys.points) ceiling = rat_min(ceiling, p.y);
    rt.band_eta = (ceiling - box.ymin) / (n + 2);
    // Steep enough that a descent's x-footprint fits between disk columns and
    // that all n elbows fit side by side left of the right wall.
    Rational descent_span = rat_min(r, rat(1, n + 1)) / 4;
    rt.glide_slope = (box.ymax - box.ymin) / descent_span;
    Rational elbow_step = 2 * descent_span;
    Rational prev_elbow = box.xmin;
    rt.bodies.assign(n, {});

    std::vector<Rational> disk_xs;
    for (const auto& d : disks) disk_xs.push_back(d.bottom.x);
    std::sort(disk_xs.begin(), disk_xs.end());
    // First elbow position at or right of `from` whose descent footprint
    // clears every disk column.
    auto clear_elbow_x = [&](Rational from) {
        for (bool moved = true; moved;) {
            moved = false;
            for (const auto& dx : disk_xs) {
                if (from + descent_span + r / 8 <= dx - r) continue;
                if (from - r / 8 >= dx + r) continue;
                from = dx + r + r / 8;
                moved = true;
            }
        }
        return from;
    };

    std::vector<Curve> reds;
    for (int p = 0; p < n; ++p) {
        int li = rt.placement[p];
        rt.cur = p;
        rt.cur_line = sys.lines[li];
        rt.out.clear();
        rt.pending_pin = -1;
        rt.cur_hug_disk = -1;
        rt.emitted_guard = 0;
        rt.rebuild_grid(p);

        Curve c;
        c.id = p;
        c.color = Color::Red;
        c.source = li;

        rt.commit(Point{box.xmin, rt.cur_line.y_at(box.xmin)});
        Rational last_anchor_x = box.xmin + 1;

        for (int dj : rt.pins[p]) {
            const DiskGeom& g = disks[dj];
            rt.pending_pin = dj;
            rt.build_ring(dj);
            int a_pos = g.anchor_pos.at(li);
            Rational f = rt.ring_factor(p);
            auto scaled = [&](int pos) {
                const Point& v = g.cycle[pos];
                return Point{g.center.x + f * (v.x - g.center.x),
                             g.center.y + f * (v.y - g.center.y)};
            };
            // Targets: approach on the line, then the guard ring from the
            // bottom counterclockwise, finishing exactly on the anchor.
            std::vector<Point> targets;
            Rational hx = g.bottom.x - 2 * r;
            targets.push_back(Point{hx, rt.cur_line.y_at(hx)});
            for (int pos = 0; pos < a_pos; ++pos) targets.push_back(scaled(pos));
            const Point anchor = g.cycle[a_pos];
            targets.push_back(anchor);

            size_t t = 0;
            while (t < targets.size()) {
                rt.cur_hug_disk = t >= 1 ? dj : -1;
                try {
                    rt.advance(targets[t], 0, params.base_offset, nullptr, false);
                    ++t;
                } catch (const DiskStopSignal& ds) {
                    // Landed on the guard ring; resume the hug past that edge.
                    int next_pos = ds.ring_edge + 1;
                    if (next_pos > a_pos)
                        throw RoutingError("disk stop landed past the anchor at point " +
                                           std::to_string(g.point_index));
                    rt.cur_hug_disk = dj;
                    t = static_cast<size_t>(next_pos) + 1;  // targets[0] is the approach
                }
            }
            rt.cur_hug_disk = -1;
            rt.pending_pin = -1;
            c.declared_tangencies.push_back(DeclaredTangency{n + dj, anchor});
            last_anchor_x = anchor.x;
        }

        // Leave the line and descend to a private landing height. The elbow
        // dodges every disk column, and elbows march right with placement so
        // descents never cut through each other's landing runs.
        Rational req = rt.pins[p].empty() ? Rational(box.xmin + 1) : Rational(last_anchor_x + r);
        Rational ex = clear_elbow_x(rat_max(req, prev_elbow + elbow_step));
        if (ex > box.xmax - 2 * descent_span)
            throw RoutingError("glide elbows overflow the right wall");
        prev_elbow = ex;
        Point E{ex, rt.cur_line.y_at(ex)};
        rt.advance(E, 0, params.base_offset, nullptr, false);
        Rational band = box.ymin + rat(p + 1) * rt.band_eta;
        Rational gx = E.x + (E.y - band) / rt.glide_slope;
        Point glide_bottom{gx, band};
        rt.advance(glide_bottom, 0, params.base_offset, nullptr, false);
        rt.advance(Point{box.xmax, band}, 0, params.base_offset, nullptr, false);

        // Compact the trace; anchors, the descent skeleton, and both
        // endpoints stay put.
        std::set<size_t> pinned{0, rt.out.size() - 1};
        for (size_t vi = 0; vi < rt.out.size(); ++vi) {
            if (rt.out[vi] == E || rt.out[vi] == glide_bottom) pinned.insert(vi);
            for (const auto& dt : c.declared_tangencies)
                if (rt.out[vi] == dt.point) pinned.insert(vi);
        }
        simplify_body(rt, rt.out, pinned, 4 * params.base_offset);

        c.polyline.vertices = rt.out;
        rt.bodies[p] = rt.out;
        if (std::getenv("TANGLAB_TRACE")) {
            std::fprintf(stderr, "body %d (%zu vertices):\n", p, rt.out.size());
            for (size_t vi = 0; vi < rt.out.size(); ++vi)
                std::fprintf(stderr, "  [%zu] (%.9f, %.9f)\n", vi,
                             rat_double(rt.out[vi].x), rat_double(rt.out[vi].y));
        }
        reds.push_back(std::move(c));
    }
    return reds;
}

// ---- pipeline --------------------------------------------------------------

SynthesisResult synthesize_family(const PointLineSystem& sys) {
    Box box = compute_box(sys);
    Rational r = choose_disk_radius(sys, box);
    RoutingParams params = default_routing_params(sys, box, r);
    int attempts = 0;
    for (;;) {
        try {
            BlueSynthesis blue = synth_blue_curves(sys, box, r);
            std::vector<Curve> reds = synth_red_curves(sys, box, blue, params);
            for (const auto& red : reds)
                for (const auto& dt : red.declared_tangencies) {
                    int bj = dt.other_id - static_cast<int>(sys.lines.size());
                    blue.curves[bj].declared_tangencies.push_back(
                        DeclaredTangency{red.id, dt.point});
                }
            SynthesisResult res;
            res.family.box = box;
            res.family.grounded = false;
            res.family.curves = std::move(reds);
            for (auto& b : blue.curves) res.family.curves.push_back(std::move(b));
            res.disks = std::move(blue.disks);
            res.radius = r;
            return res;
        } catch (const RoutingError&) {
            if (++attempts >= 3) throw;
            params.base_offset = params.base_offset / 4;
            for (auto& [p, off] : params.per_curve_offset) off = off / 4;
        }
    }
}

CurveFamily to_doubly_grounded(const CurveFamily& family) {
    if (family.grounded) return family;
    CurveFamily out = family;
    Rational max_x = family.box.xmax;
    for (const auto& c : family.curves)
        for (const auto& v : c.polyline.vertices) max_x = rat_max(max_x, v.x);
    Rational right_x = max_x + 1;
    out.strip = std::make_pair(family.box.xmin, right_x);
    out.grounded = true;

    // Blue verticals continue above the box as nested L-paths; the rightmost
    // vertical turns at the lowest height so the paths never meet.
    std::vector<std::pair<Rational, size_t>> blues;
    for (size_t i = 0; i < out.curves.size(); ++i)
        if (out.curves[i].color == Color::Blue)
            blues.emplace_back(out.curves[i].polyline.vertices.back().x, i);
    std::sort(blues.begin(), blues.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    for (size_t rank = 0; rank < blues.size(); ++rank) {
        Curve& c = out.curves[blues[rank].second];
        Point top = c.polyline.vertices.back();
        Rational h = family.box.ymax + rat(static_cast<long>(rank) + 1);
        c.polyline.vertices.push_back(Point{top.x, h});
        c.polyline.vertices.push_back(Point{right_x, h});
    }
    return out;
}

Polyline route_disk_negative_slope(const Point& disk_bottom, const Rational& r,
                                   const Line& line, const Rational& approach_margin) {
    if (!(line.slope < 0))
        throw std::invalid_argument("helper is for negative slopes");
    if (!line.contains(disk_bottom))
        throw std::invalid_argument("line must pass through the disk bottom");
    Point center{disk_bottom.x, disk_bottom.y + r};
    Point anchor = line_second_circle_intersection(center, r, disk_bottom, line.slope);

    Polyline pl;
    Rational x0 = anchor.x - approach_margin;
    pl.vertices.push_back(Point{x0, line.y_at(x0)});
    pl.vertices.push_back(anchor);
    // Skirt the short arc under the chord: scaled circle points between the
    // anchor and the bottom, walked clockwise, then rejoin the line right of
    // the bottom point.
    Rational f = rat(9, 8);
    auto scaled_at = [&](const Rational& slope_param) {
        Point v = line_second_circle_intersection(center, r, disk_bottom, slope_param);
        return Point{center.x + f * (v.x - center.x), center.y + f * (v.y - center.y)};
    };
    for (long num : {3L, 2L, 1L}) {
        Rational sp = line.slope * rat(num, 4);
        pl.vertices.push_back(scaled_at(sp));
    }
    pl.vertices.push_back(Point{center.x, center.y - f * r});
    Rational x1 = disk_bottom.x + r / 2;
    pl.vertices.push_back(Point{x1, line.y_at(x1)});
    return pl;
}

}  // namespace tanglab
