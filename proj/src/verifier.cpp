#include "tanglab/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace tanglab {

int worker_threads() {
    if (const char* env = std::getenv("TANGENCY_LAB_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

namespace {

struct PointLess {
    bool operator()(const Point& a, const Point& b) const {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
};

struct DBox {
    double xlo, xhi, ylo, yhi;
};

DBox segment_dbox(const Point& a, const Point& b) {
    double ax = rat_double(a.x), ay = rat_double(a.y);
    double bx = rat_double(b.x), by = rat_double(b.y);
    DBox box;
    box.xlo = std::nextafter(std::min(ax, bx), -1e300);
    box.xhi = std::nextafter(std::max(ax, bx), 1e300);
    box.ylo = std::nextafter(std::min(ay, by), -1e300);
    box.yhi = std::nextafter(std::max(ay, by), 1e300);
    return box;
}

// Uniform grid over conservative double boxes; exact predicates confirm.
struct SegmentGrid {
    double x0 = 0, y0 = 0, cell = 1;
    std::unordered_map<uint64_t, std::vector<uint32_t>> cells;
    std::vector<DBox> boxes;

    static uint64_t key(int64_t cx, int64_t cy) {
        return (static_cast<uint64_t>(cx) << 32) ^ (static_cast<uint64_t>(cy) & 0xffffffffULL);
    }

    void build(const std::vector<DBox>& bxs) {
        boxes = bxs;
        if (boxes.empty()) return;
        double xlo = boxes[0].xlo, xhi = boxes[0].xhi;
        double ylo = boxes[0].ylo, yhi = boxes[0].yhi;
        for (const auto& b : boxes) {
            xlo = std::min(xlo, b.xlo); xhi = std::max(xhi, b.xhi);
            ylo = std::min(ylo, b.ylo); yhi = std::max(yhi, b.yhi);
        }
        x0 = xlo; y0 = ylo;
        double span = std::max(xhi - xlo, yhi - ylo);
        double target = std::sqrt(static_cast<double>(boxes.size())) + 1.0;
        cell = std::max(span / target, 1e-12);
        for (uint32_t i = 0; i < boxes.size(); ++i) visit(boxes[i], [&](uint64_t k) {
            cells[k].push_back(i);
        });
    }

    template <class F>
    void visit(const DBox& b, F&& f) const {
        int64_t cx0 = static_cast<int64_t>(std::floor((b.xlo - x0) / cell));
        int64_t cx1 = static_cast<int64_t>(std::floor((b.xhi - x0) / cell));
        int64_t cy0 = static_cast<int64_t>(std::floor((b.ylo - y0) / cell));
        int64_t cy1 = static_cast<int64_t>(std::floor((b.yhi - y0) / cell));
        for (int64_t cx = cx0; cx <= cx1; ++cx)
            for (int64_t cy = cy0; cy <= cy1; ++cy) f(key(cx, cy));
    }

    template <class F>
    void query(const DBox& b, F&& f) const {
        visit(b, [&](uint64_t k) {
            auto it = cells.find(k);
            if (it == cells.end()) return;
            for (uint32_t idx : it->second)
                if (boxes[idx].xlo <= b.xhi && b.xlo <= boxes[idx].xhi &&
                    boxes[idx].ylo <= b.yhi && b.ylo <= boxes[idx].yhi)
                    f(idx);
        });
    }
};

struct PairPoints {
    // For each common point, the segment indices touching it on each curve.
    std::map<Point, std::pair<std::set<int>, std::set<int>>, PointLess> points;
    std::vector<std::pair<Point, Point>> overlaps;
};

void branch_dirs(const Polyline& pl, const std::set<int>& segs, const Point& p,
                 std::vector<Point>& out) {
    out.clear();
    for (int si : segs) {
        const Point& u = pl.vertices[si];
        const Point& v = pl.vertices[si + 1];
        if (u != p) out.push_back(Point{u.x - p.x, u.y - p.y});
        if (v != p) out.push_back(Point{v.x - p.x, v.y - p.y});
    }
    // A vertex shared by two adjacent segments yields one branch per segment;
    // drop exact duplicates coming from a vertex listed on both sides.
    std::sort(out.begin(), out.end(), PointLess{});
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

EventKind classify_point(const Polyline& a, const Polyline& b, const PairPoints& pp,
                         const Point& p, const std::set<int>& asegs,
                         const std::set<int>& bsegs) {
    (void)pp;
    std::vector<Point> da, db;
    branch_dirs(a, asegs, p, da);
    branch_dirs(b, bsegs, p, db);
    if (da.size() < 2 || db.size() < 2) return EventKind::EndpointContact;
    if (da.size() > 2 || db.size() > 2)
        throw std::runtime_error("non-simple polyline at point (" + rat_str(p.x) + "," + rat_str(p.y) + ")");

    struct Branch { Point dir; int owner; };
    std::vector<Branch> br;
    for (const auto& d : da) br.push_back({d, 0});
    for (const auto& d : db) br.push_back({d, 1});
    std::sort(br.begin(), br.end(), [](const Branch& x, const Branch& y) {
        return compare_directions(x.dir, y.dir) < 0;
    });
    for (size_t i = 0; i < br.size(); ++i)
        for (size_t j = i + 1; j < br.size(); ++j)
            if (br[i].owner != br[j].owner &&
                compare_directions(br[i].dir, br[j].dir) == 0)
                return EventKind::Overlap;  // collinear graze
    bool alternating = true;
    for (size_t i = 0; i < br.size(); ++i)
        if (br[i].owner == br[(i + 1) % br.size()].owner) alternating = false;
    return alternating ? EventKind::Crossing : EventKind::Touching;
}

void collect_pair(const Polyline& a, const Polyline& b, PairPoints& pp) {
    std::vector<DBox> bb;
    bb.reserve(b.size() - 1);
    for (size_t i = 0; i + 1 < b.vertices.size(); ++i)
        bb.push_back(segment_dbox(b.vertices[i], b.vertices[i + 1]));
    SegmentGrid grid;
    grid.build(bb);
    for (size_t i = 0; i + 1 < a.vertices.size(); ++i) {
        Segment sa{a.vertices[i], a.vertices[i + 1]};
        DBox da = segment_dbox(sa.a, sa.b);
        grid.query(da, [&](uint32_t j) {
            Segment sb{b.vertices[j], b.vertices[j + 1]};
            IntersectionResult r = segment_intersect(sa, sb);
            if (r.kind == IntersectionResult::Single) {
                auto& e = pp.points[r.point];
                e.first.insert(static_cast<int>(i));
                e.second.insert(static_cast<int>(j));
            } else if (r.kind == IntersectionResult::Overlap) {
                pp.overlaps.emplace_back(r.overlap.a, r.overlap.b);
            }
        });
    }
}

std::vector<IntersectionEvent> events_for_pair(const Polyline& a, const Polyline& b,
                                               int ida, int idb) {
    PairPoints pp;
    collect_pair(a, b, pp);
    std::vector<IntersectionEvent> events;
    for (const auto& [pa, pb] : pp.overlaps) {
        IntersectionEvent ev;
        ev.curve_a = ida; ev.curve_b = idb;
        ev.point = pa;
        ev.kind = EventKind::Overlap;
        events.push_back(ev);
    }
    for (const auto& [p, segs] : pp.points) {
        IntersectionEvent ev;
        ev.curve_a = ida; ev.curve_b = idb;
        ev.point = p;
        ev.kind = classify_point(a, b, pp, p, segs.first, segs.second);
        events.push_back(ev);
    }
    return events;
}

}  // namespace

std::vector<IntersectionEvent> pair_intersections(const Polyline& a, const Polyline& b) {
    require_simple(a, "first polyline");
    require_simple(b, "second polyline");
    return events_for_pair(a, b, 0, 1);
}

void require_simple(const Polyline& c, const std::string& label) {
    std::string why;
    if (!c.valid_chain(&why))
        throw std::runtime_error(label + ": invalid polyline (" + why + ")");
    std::vector<DBox> bb;
    for (size_t i = 0; i + 1 < c.vertices.size(); ++i)
        bb.push_back(segment_dbox(c.vertices[i], c.vertices[i + 1]));
    SegmentGrid grid;
    grid.build(bb);
    size_t nseg = c.vertices.size() - 1;
    for (size_t i = 0; i < nseg; ++i) {
        Segment si{c.vertices[i], c.vertices[i + 1]};
        grid.query(bb[i], [&](uint32_t j) {
            if (j <= i) return;
            Segment sj{c.vertices[j], c.vertices[j + 1]};
            IntersectionResult r = segment_intersect(si, sj);
            if (r.kind == IntersectionResult::Empty) return;
            if (j == i + 1 && r.kind == IntersectionResult::Single &&
                r.point == c.vertices[i + 1])
                return;  // shared vertex of adjacent segments
            throw std::runtime_error(label + ": self-intersection between segments " +
                                     std::to_string(i) + " and " + std::to_string(j));
        });
    }
}

bool is_x_monotone(const Polyline& c) {
    for (size_t i = 1; i < c.vertices.size(); ++i)
        if (!(c.vertices[i - 1].x < c.vertices[i].x)) return false;
    return true;
}

TangencyReport tangency_report(const CurveFamily& family) {
    const auto& curves = family.curves;
    for (const auto& cu : curves)
        require_simple(cu.polyline, "curve " + std::to_string(cu.id));

    // One grid over every segment of every curve; curve pairs are examined
    // only where segments actually come close.
    std::vector<DBox> boxes;
    std::vector<std::pair<uint32_t, uint32_t>> owner;  // (curve idx, seg idx)
    for (uint32_t ci = 0; ci < curves.size(); ++ci) {
        const auto& v = curves[ci].polyline.vertices;
        for (uint32_t si = 0; si + 1 < v.size(); ++si) {
            boxes.push_back(segment_dbox(v[si], v[si + 1]));
            owner.emplace_back(ci, si);
        }
    }
    SegmentGrid grid;
    grid.build(boxes);

    std::unordered_set<uint64_t> seen;
    std::vector<std::array<uint32_t, 4>> cand;  // curveA, segA, curveB, segB
    for (uint32_t gi = 0; gi < boxes.size(); ++gi) {
        grid.query(boxes[gi], [&](uint32_t gj) {
            if (gj <= gi) return;
            auto [ca, sa] = owner[gi];
            auto [cb, sb] = owner[gj];
            if (ca == cb) return;
            uint64_t k = (static_cast<uint64_t>(std::min(gi, gj)) << 32) | std::max(gi, gj);
            if (!seen.insert(k).second) return;
            if (ca < cb) cand.push_back({ca, sa, cb, sb});
            else cand.push_back({cb, sb, ca, sa});
        });
    }

    struct Hit {
        uint64_t pair;
        IntersectionResult res;
        uint32_t sa, sb;
    };
    std::vector<Hit> hits;
    {
        int nw = worker_threads();
        std::vector<std::vector<Hit>> partial(nw);
        std::vector<std::thread> pool;
        size_t chunk = (cand.size() + nw - 1) / std::max(nw, 1);
        for (int w = 0; w < nw; ++w) {
            size_t lo = w * chunk, hi = std::min(cand.size(), lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi, w]() {
                for (size_t idx = lo; idx < hi; ++idx) {
                    auto [ca, sa, cb, sb] = cand[idx];
                    const auto& va = curves[ca].polyline.vertices;
                    const auto& vb = curves[cb].polyline.vertices;
                    Segment A{va[sa], va[sa + 1]}, B{vb[sb], vb[sb + 1]};
                    IntersectionResult r = segment_intersect(A, B);
                    if (r.kind != IntersectionResult::Empty)
                        partial[w].push_back(Hit{(static_cast<uint64_t>(ca) << 32) | cb, r, sa, sb});
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& p : partial) hits.insert(hits.end(), p.begin(), p.end());
    }

    std::map<uint64_t, PairPoints> per_pair;
    for (const auto& h : hits) {
        auto& pp = per_pair[h.pair];
        if (h.res.kind == IntersectionResult::Single) {
            auto& e = pp.points[h.res.point];
            e.first.insert(static_cast<int>(h.sa));
            e.second.insert(static_cast<int>(h.sb));
        } else {
            pp.overlaps.emplace_back(h.res.overlap.a, h.res.overlap.b);
        }
    }

    TangencyReport rep;
    for (auto& [key, pp] : per_pair) {
        int ca = static_cast<int>(key >> 32);
        int cb = static_cast<int>(key & 0xffffffffULL);
        const Curve& A = curves[ca];
        const Curve& B = curves[cb];
        std::vector<IntersectionEvent> events;
        for (const auto& [pa, pb] : pp.overlaps) {
            IntersectionEvent ev;
            ev.curve_a = A.id; ev.curve_b = B.id;
            ev.point = pa; ev.kind = EventKind::Overlap;
            events.push_back(ev);
        }
        for (const auto& [p, segs] : pp.points) {
            IntersectionEvent ev;
            ev.curve_a = A.id; ev.curve_b = B.id;
            ev.point = p;
            ev.kind = classify_point(A.polyline, B.polyline, pp, p, segs.first, segs.second);
            events.push_back(ev);
        }
        if (events.empty()) continue;

        bool bichromatic = A.color != B.color;
        if (!bichromatic) {
            for (const auto& ev : events) rep.same_color_violations.push_back(ev);
            continue;
        }
        for (const auto& ev : events)
            if (ev.kind == EventKind::Overlap) rep.overlap_violations.push_back(ev);
        bool any_crossing = std::any_of(events.begin(), events.end(), [](const auto& e) {
            return e.kind == EventKind::Crossing;
        });
        if (any_crossing) ++rep.crossing_pair_count;
        if (events.size() == 1 && events[0].kind == EventKind::Touching)
            rep.tangent_pairs.push_back(TangentPair{A.id, B.id, events[0].point});
    }
    rep.total_tangencies = static_cast<long>(rep.tangent_pairs.size());
    return rep;
}

GroundedReport verify_grounded(const CurveFamily& family) {
    GroundedReport rep;
    if (!family.grounded || !family.strip) {
        rep.ok = false;
        rep.violations.push_back("family is not grounded");
        return rep;
    }
    const auto& [left_x, right_x] = *family.strip;
    for (const auto& cu : family.curves) {
        const Rational& target = cu.color == Color::Red ? left_x : right_x;
        bool touches = false;
        for (const auto& v : cu.polyline.vertices) {
            if (v.x == target) touches = true;
            if (v.x < left_x || v.x > right_x)
                rep.violations.push_back("curve " + std::to_string(cu.id) +
                                         " leaves the strip at x=" + rat_str(v.x));
        }
        if (!touches)
            rep.violations.push_back("curve " + std::to_string(cu.id) +
                                     " never reaches its strip boundary");
    }
    rep.ok = rep.violations.empty();
    return rep;
}

}  // namespace tanglab
