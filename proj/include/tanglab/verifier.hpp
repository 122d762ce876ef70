#pragma once

#include "tanglab/curves.hpp"

#include <string>
#include <vector>

namespace tanglab {

enum class EventKind { Crossing, Touching, Overlap, EndpointContact };

struct IntersectionEvent {
    int curve_a = -1, curve_b = -1;
    Point point;
    EventKind kind = EventKind::Crossing;
};

struct TangentPair {
    int curve_a = -1, curve_b = -1;
    Point point;
};

struct TangencyReport {
    std::vector<TangentPair> tangent_pairs;
    long crossing_pair_count = 0;
    std::vector<IntersectionEvent> same_color_violations;
    std::vector<IntersectionEvent> overlap_violations;
    long total_tangencies = 0;
};

// All common points of two simple polylines, classified exactly by the
// cyclic order of branch directions around each point. Curve ids in the
// returned events are 0 for `a` and 1 for `b`.
std::vector<IntersectionEvent> pair_intersections(const Polyline& a, const Polyline& b);

// Independent certification: re-intersects every pair of curves from their
// polylines alone; declared_tangencies are never consulted.
TangencyReport tangency_report(const CurveFamily& family);

struct GroundedReport {
    bool ok = true;
    std::vector<std::string> violations;
};

GroundedReport verify_grounded(const CurveFamily& family);

bool is_x_monotone(const Polyline& c);

// Throws std::runtime_error naming the self-intersection if not simple.
void require_simple(const Polyline& c, const std::string& label);

// Worker-thread cap from TANGENCY_LAB_THREADS (>=1).
int worker_threads();

}  // namespace tanglab
