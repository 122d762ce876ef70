#pragma once

#include "tanglab/curves.hpp"
#include "tanglab/verifier.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tanglab {

struct EdgeOrderedGraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> order;  // rank per edge, a bijection onto 1..|edges|

    void validate() const;
};

struct ZeroOneMatrix {
    int rows = 0, cols = 0;
    std::set<std::pair<int, int>> ones;

    bool at(int r, int c) const { return ones.count({r, c}) > 0; }
};

// Star redrawing of a certified family: one vertex per curve at its base
// point, one edge per tangency, each edge split into a red and a blue part
// (carrier sub-polylines from base to tangency).
struct EdgePart {
    int curve = -1;   // curve id
    int edge = -1;    // edge index
    Polyline carrier;
};

struct DrawnBipartiteGraph {
    std::vector<int> curve_ids;
    std::vector<Color> colors;
    std::vector<Point> base_points;                 // per vertex
    std::vector<std::pair<int, int>> edges;         // vertex indices (red, blue)
    std::vector<Point> edge_points;                 // tangency per edge
    std::vector<std::array<EdgePart, 2>> edge_parts;  // [red part, blue part]
    std::vector<std::pair<int, int>> crossing_relation;  // part keys 2*edge+side
    bool grounded_bases = false;
};

enum class BaseChoice { Grounded, CurveStart };

DrawnBipartiteGraph star_redraw(const CurveFamily& family, const TangencyReport& report,
                                BaseChoice base_choice);

struct ClaimP2Report {
    bool ok = true;
    std::vector<std::string> violations;
    long paths2_checked = 0;
    long cycles4_checked = 0;
    long walk_windows_checked = 0;
};

// Self-crossing scan over 2-edge paths, 4-cycles, and all windows of 5
// consecutive edge-parts on walks of up to 3 edges.
ClaimP2Report check_claim_p2(const DrawnBipartiteGraph& g);

struct P5Witness {
    std::array<int, 5> path;  // a-b-c-d-e with order(ab)<order(cd)<order(bc)<order(de)
};

std::optional<P5Witness> contains_forbidden_p5(const EdgeOrderedGraph& g);

// Independent reference: scans every ordered vertex 5-tuple.
std::optional<P5Witness> contains_forbidden_p5_naive(const EdgeOrderedGraph& g);

// Split the tangency graph of an x-monotone family by the local above/below
// relation at each touching, each half edge-ordered by tangency x.
std::pair<EdgeOrderedGraph, EdgeOrderedGraph> xmon_tangency_graphs(
    const CurveFamily& family, const TangencyReport& report);

ZeroOneMatrix ordered_adjacency_matrix(const DrawnBipartiteGraph& g);

struct C6Witness {
    std::array<int, 3> rows, cols;
};

std::optional<C6Witness> contains_positive_c6(const ZeroOneMatrix& m);

// Independent reference: enumerates 6-cycles on the bipartite graph side.
std::optional<C6Witness> contains_positive_c6_graphside(const ZeroOneMatrix& m);

// Any two rows sharing two common 1-columns form a C4.
bool matrix_c4_free(const ZeroOneMatrix& m);

struct ExtremalP5Result {
    int max_edges = 0;
    EdgeOrderedGraph witness;
};
ExtremalP5Result extremal_bruteforce_p5(int n);

struct ExtremalC6Result {
    int max_ones = 0;
    ZeroOneMatrix witness;
};
ExtremalC6Result extremal_bruteforce_positive_c6(int n);

}  // namespace tanglab
