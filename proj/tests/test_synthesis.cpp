#include "tanglab/synthesis.hpp"
#include "tanglab/verifier.hpp"

#include <doctest.h>

#include <set>

using namespace tanglab;

namespace {

PointLineSystem sheared(int k) {
    auto raw = generate_grid_system(k);
    return shear_normalize(raw, default_shear(raw));
}

std::set<std::pair<int, int>> tangent_pair_set(const TangencyReport& rep) {
    std::set<std::pair<int, int>> out;
    for (const auto& tp : rep.tangent_pairs)
        out.insert({std::min(tp.curve_a, tp.curve_b), std::max(tp.curve_a, tp.curve_b)});
    return out;
}

std::set<std::pair<int, int>> declared_pair_set(const CurveFamily& fam) {
    std::set<std::pair<int, int>> out;
    for (const auto& c : fam.curves)
        for (const auto& dt : c.declared_tangencies)
            out.insert({std::min(c.id, dt.other_id), std::max(c.id, dt.other_id)});
    return out;
}

}  // namespace

TEST_CASE("box contains all crossings strictly and lines pierce its sides") {
    for (int k : {1, 2}) {
        auto sys = sheared(k);
        Box box = compute_box(sys);
        for (size_t i = 0; i < sys.lines.size(); ++i) {
            Rational yl = sys.lines[i].y_at(box.xmin);
            CHECK(yl > box.ymin);
            CHECK(yl < box.ymax);
            Rational yr = sys.lines[i].y_at(box.xmax);
            CHECK(yr > box.ymin);
            CHECK(yr < box.ymax);
            for (size_t j = i + 1; j < sys.lines.size(); ++j)
                if (auto q = line_intersect(sys.lines[i], sys.lines[j])) {
                    CHECK(q->x > box.xmin);
                    CHECK(q->x < box.xmax);
                    CHECK(q->y > box.ymin);
                    CHECK(q->y < box.ymax);
                }
        }
    }
}

TEST_CASE("disk radius for two far points is the pair bound halved") {
    PointLineSystem sys;
    sys.k = 1;
    sys.points = {pt(0, 0), pt(4, 0)};
    sys.lines = {Line{rat(1), rat(100)}};  // far away, binds nothing
    Box box{rat(-100), rat(100), rat(-100), rat(100)};
    CHECK(choose_disk_radius(sys, box) == rat(1, 2));
}

TEST_CASE("disk radius satisfies its guarantees on the k=2 system") {
    auto sys = sheared(2);
    Box box = compute_box(sys);
    Rational r = choose_disk_radius(sys, box);
    CHECK(r > 0);
    for (size_t i = 0; i < sys.points.size(); ++i) {
        for (size_t j = i + 1; j < sys.points.size(); ++j) {
            CHECK(16 * r * r < dist2(sys.points[i], sys.points[j]));
            CHECK(4 * r < rat_abs(sys.points[i].x - sys.points[j].x));
        }
        for (const auto& l : sys.lines)
            if (!l.contains(sys.points[i]))
                CHECK(4 * r * r < point_line_dist2(sys.points[i], l));
        CHECK(sys.points[i].x - r > box.xmin);
        CHECK(sys.points[i].x + r < box.xmax);
        CHECK(sys.points[i].y + 2 * r < box.ymax);
    }
    for (size_t i = 0; i < sys.lines.size(); ++i)
        for (size_t j = i + 1; j < sys.lines.size(); ++j)
            if (auto q = line_intersect(sys.lines[i], sys.lines[j]))
                for (const auto& p : sys.points) {
                    Rational d2 = dist2(p, *q);
                    if (d2 > 0) CHECK(4 * r * r < d2);
                }
}

TEST_CASE("coincident points are rejected") {
    PointLineSystem sys;
    sys.points = {pt(0, 0), pt(0, 0)};
    sys.lines = {Line{rat(1), rat(1)}};
    CHECK_THROWS(choose_disk_radius(sys, Box{rat(-5), rat(5), rat(-5), rat(5)}));
}

TEST_CASE("blue anchors for slopes 1 and 1/2 at the origin disk") {
    PointLineSystem sys;
    sys.k = 1;
    sys.points = {pt(0, 0)};
    sys.lines = {Line{rat(1, 2), rat(0)}, Line{rat(1), rat(0)}};
    sys.incidences = {{0, 0}, {1, 0}};
    Box box{rat(-10), rat(10), rat(-10), rat(10)};
    auto blue = synth_blue_curves(sys, box, rat(1));
    REQUIRE(blue.disks.size() == 1);
    const DiskSpec& d = blue.disks[0];
    REQUIRE(d.anchors.size() == 2);
    CHECK(d.anchors[0].second == Point{rat(4, 5), rat(2, 5)});
    CHECK(d.anchors[1].second == pt(1, 1));
    // Counterclockwise from the bottom: smaller slope first.
    CHECK(d.anchors[0].first == 0);
    CHECK(d.anchors[1].first == 1);
    CHECK(d.center == pt(0, 1));
}

TEST_CASE("blue polygons stay within a quarter radius of the circle") {
    auto sys = sheared(2);
    Box box = compute_box(sys);
    Rational r = choose_disk_radius(sys, box);
    auto blue = synth_blue_curves(sys, box, r);
    for (size_t j = 0; j < blue.disks.size(); ++j) {
        const auto& c = blue.curves[j];
        const auto& d = blue.disks[j];
        // Polygon vertices (all but the last, which is the box-top point) are
        // exactly on the circle, and every chord midpoint stays deep enough.
        size_t m = c.polyline.vertices.size();
        for (size_t i = 0; i + 1 < m; ++i) {
            const Point& v = c.polyline.vertices[i];
            CHECK(dist2(v, d.center) == d.radius * d.radius);
        }
        Rational limit = rat(3, 4) * d.radius;
        for (size_t i = 0; i + 2 < m; ++i) {
            const Point& a = c.polyline.vertices[i];
            const Point& b = c.polyline.vertices[i + 1];
            Point mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
            CHECK(dist2(mid, d.center) >= limit * limit);
        }
        CHECK(c.polyline.vertices.back() == Point{d.center.x, box.ymax});
        require_simple(c.polyline, "blue curve");
    }
}

TEST_CASE("a bare point still gets a blue curve") {
    PointLineSystem sys;
    sys.k = 1;
    sys.points = {pt(0, 0)};
    sys.lines = {Line{rat(1, 3), rat(5)}};
    Box box{rat(-10), rat(10), rat(-10), rat(10)};
    auto blue = synth_blue_curves(sys, box, rat(1, 2));
    CHECK(blue.disks[0].anchors.empty());
    CHECK(blue.curves[0].polyline.size() >= 8);
    require_simple(blue.curves[0].polyline, "anchorless blue");
}

TEST_CASE("negative slope detour touches its disk exactly once") {
    PointLineSystem sys;
    sys.k = 1;
    sys.points = {pt(0, 0)};
    sys.lines = {Line{rat(-1, 2), rat(0)}};
    sys.incidences = {{0, 0}};
    Box box{rat(-10), rat(10), rat(-10), rat(10)};
    auto blue = synth_blue_curves(sys, box, rat(1));
    Polyline detour = route_disk_negative_slope(pt(0, 0), rat(1), sys.lines[0], rat(3));
    require_simple(detour, "negative slope detour");
    auto events = pair_intersections(detour, blue.curves[0].polyline);
    REQUIRE(events.size() == 1);
    CHECK(events[0].kind == EventKind::Touching);
    CHECK(events[0].point == Point{rat(-4, 5), rat(2, 5)});
    for (const auto& v : detour.vertices) CHECK(v.y <= sys.lines[0].y_at(v.x));
}

TEST_CASE("k=1 pipeline end to end") {
    auto sys = sheared(1);
    SynthesisResult res = synthesize_family(sys);
    CHECK(res.family.curves.size() == 3);  // one line, two points
    auto rep = tangency_report(res.family);
    CHECK(rep.total_tangencies == 1);
    CHECK(rep.same_color_violations.empty());
    CHECK(rep.overlap_violations.empty());
    CHECK(tangent_pair_set(rep) == declared_pair_set(res.family));
}

TEST_CASE("k=2 pipeline: all sixteen incidences become certified tangencies") {
    auto sys = sheared(2);
    SynthesisResult res = synthesize_family(sys);
    auto rep = tangency_report(res.family);
    CHECK(rep.same_color_violations.empty());
    CHECK(rep.overlap_violations.empty());
    CHECK(rep.total_tangencies >= 16);
    auto declared = declared_pair_set(res.family);
    CHECK(declared.size() == 16);
    auto certified = tangent_pair_set(rep);
    for (const auto& pr : declared) CHECK(certified.count(pr) == 1);

    // Every red curve stays weakly below its source line, and excursions
    // that return to the line only move right.
    for (const auto& c : res.family.curves) {
        if (c.color != Color::Red) continue;
        const Line& l = sys.lines[c.source];
        for (const auto& v : c.polyline.vertices) CHECK(v.y <= l.y_at(v.x));
        Rational leave_x = c.polyline.vertices.front().x;
        bool prev_on_line = true;
        for (size_t i = 1; i < c.polyline.vertices.size(); ++i) {
            const Point& v = c.polyline.vertices[i];
            bool on_line = v.y == l.y_at(v.x);
            if (!prev_on_line) CHECK(v.x >= leave_x);
            if (on_line && !prev_on_line) {
                CHECK(v.x > leave_x);  // returns strictly to the right
            }
            if (on_line) leave_x = v.x;
            prev_on_line = on_line;
        }
    }
}

TEST_CASE("two crossing lines with no incidences yield disjoint red curves") {
    PointLineSystem sys;
    sys.k = 1;
    sys.points = {pt(0, 0), pt(10, 3)};  // off both lines
    sys.lines = {Line{rat(1, 4), rat(4)}, Line{rat(1, 2), rat(2)}};
    sys.incidences = {};
    SynthesisResult res = synthesize_family(sys);
    auto rep = tangency_report(res.family);
    CHECK(rep.same_color_violations.empty());
    CHECK(rep.total_tangencies == 0);
}

TEST_CASE("grounding preserves the certified tangency set") {
    for (int k : {1, 2}) {
        auto sys = sheared(k);
        SynthesisResult res = synthesize_family(sys);
        auto before = tangency_report(res.family);
        CurveFamily grounded = to_doubly_grounded(res.family);
        CHECK(verify_grounded(grounded).ok);
        auto after = tangency_report(grounded);
        CHECK(tangent_pair_set(before) == tangent_pair_set(after));
        CHECK(after.same_color_violations.empty());
    }
}
