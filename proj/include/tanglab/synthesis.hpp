#pragma once

#include "tanglab/curves.hpp"
#include "tanglab/incidence.hpp"

#include <map>
#include <vector>

namespace tanglab {

struct RoutingParams {
    Rational base_offset;
    std::map<int, Rational> per_curve_offset;  // placement position -> offset
    Rational min_feature_gap;
};

struct RoutingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Axis-parallel box with rational margin 1 beyond the extreme crossing and
// point coordinates, widened so every line enters through the left side and
// exits through the right side.
Box compute_box(const PointLineSystem& sys);

// Radius small enough that disks around distinct points are disjoint and
// x-separated, miss every non-incident line, every foreign crossing, and
// the box boundary.
Rational choose_disk_radius(const PointLineSystem& sys, const Box& box);

struct BlueSynthesis {
    std::vector<Curve> curves;
    std::vector<DiskSpec> disks;
};

// One blue curve per point: a convex polygon inscribed in the circle whose
// bottommost point is p_j (anchors are polygon vertices), opened next to the
// circle top, plus a vertical segment to the top side of the box.
BlueSynthesis synth_blue_curves(const PointLineSystem& sys, const Box& box, const Rational& r);

// Default offsets for the red router.
RoutingParams default_routing_params(const PointLineSystem& sys, const Box& box,
                                     const Rational& r);

// Red curves in left-side order (topmost first). Each rides its line,
// touches every incident disk at the precomputed anchor, detours around
// earlier red curves (out past the right side and back), then descends to a
// private landing height on the right side.
std::vector<Curve> synth_red_curves(const PointLineSystem& sys, const Box& box,
                                    const BlueSynthesis& blue, const RoutingParams& params);

// Full ungrounded pipeline with shrink-and-retry on routing failures.
struct SynthesisResult {
    CurveFamily family;
    std::vector<DiskSpec> disks;
    Rational radius;
};
SynthesisResult synthesize_family(const PointLineSystem& sys);

// Deform into a vertical strip: blue verticals continue above the box as
// nested L-paths to the right strip boundary; red curves are unchanged.
CurveFamily to_doubly_grounded(const CurveFamily& family);

// Local detour for a negative-slope line through the bottom point of a disk:
// touch at the anchor first, then skirt the bottom arc and rejoin the line
// right of the bottom point. The pipeline never needs it (all slopes are
// positive after shearing); kept for the mirrored case.
Polyline route_disk_negative_slope(const Point& disk_bottom, const Rational& r,
                                   const Line& line, const Rational& approach_margin);

}  // namespace tanglab
