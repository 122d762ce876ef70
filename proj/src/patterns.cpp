#include "tanglab/patterns.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <stdexcept>

namespace tanglab {

void EdgeOrderedGraph::validate() const {
    if (order.size() != edges.size())
        throw std::invalid_argument("edge order size mismatch");
    std::set<std::pair<int, int>> seen;
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count || u == v)
            throw std::invalid_argument("bad edge");
        auto key = std::minmax(u, v);
        if (!seen.insert({key.first, key.second}).second)
            throw std::invalid_argument("duplicate edge");
    }
    std::vector<int> ranks = order;
    std::sort(ranks.begin(), ranks.end());
    for (size_t i = 0; i < ranks.size(); ++i)
        if (ranks[i] != static_cast<int>(i) + 1)
            throw std::invalid_argument("edge order is not a bijection onto 1..m");
}

// ---- star redrawing --------------------------------------------------------

namespace {

int vertex_index_of_point(const Polyline& pl, const Point& p) {
    for (size_t i = 0; i < pl.vertices.size(); ++i)
        if (pl.vertices[i] == p) return static_cast<int>(i);
    return -1;
}

Polyline sub_polyline(const Polyline& pl, int from, int to) {
    Polyline out;
    for (int i = from; i <= to; ++i) out.vertices.push_back(pl.vertices[i]);
    return out;
}

bool parts_cross(const EdgePart& pa, const EdgePart& pb) {
    auto events = pair_intersections(pa.carrier, pb.carrier);
    auto is_endpoint = [](const EdgePart& part, const Point& q) {
        return part.carrier.vertices.front() == q || part.carrier.vertices.back() == q;
    };
    for (const auto& ev : events) {
        if (ev.kind != EventKind::Crossing) continue;
        if (is_endpoint(pa, ev.point) || is_endpoint(pb, ev.point)) continue;
        return true;
    }
    return false;
}

}  // namespace

DrawnBipartiteGraph star_redraw(const CurveFamily& family, const TangencyReport& report,
                                BaseChoice base_choice) {
    if (!report.same_color_violations.empty() || !report.overlap_violations.empty())
        throw std::invalid_argument("star redrawing requires a violation-free report");
    if (base_choice == BaseChoice::Grounded && (!family.grounded || !family.strip))
        throw std::invalid_argument("grounded base points need a grounded family");

    DrawnBipartiteGraph g;
    g.grounded_bases = base_choice == BaseChoice::Grounded;

    std::map<int, const Curve*> by_id;
    for (const auto& c : family.curves) by_id[c.id] = &c;

    std::map<int, int> vertex_of;
    auto vertex_for = [&](int curve_id) {
        auto it = vertex_of.find(curve_id);
        if (it != vertex_of.end()) return it->second;
        const Curve& c = *by_id.at(curve_id);
        Point base;
        if (base_choice == BaseChoice::CurveStart) {
            base = c.polyline.vertices.front();
        } else {
            const Rational& target =
                c.color == Color::Red ? family.strip->first : family.strip->second;
            bool found = false;
            for (const auto& v : c.polyline.vertices)
                if (v.x == target) { base = v; found = true; break; }
            if (!found)
                throw std::invalid_argument("curve " + std::to_string(curve_id) +
                                            " has no boundary base point");
        }
        int idx = static_cast<int>(g.curve_ids.size());
        g.curve_ids.push_back(curve_id);
        g.colors.push_back(c.color);
        g.base_points.push_back(base);
        vertex_of[curve_id] = idx;
        return idx;
    };

    for (const auto& tp : report.tangent_pairs) {
        const Curve& A = *by_id.at(tp.curve_a);
        const Curve& B = *by_id.at(tp.curve_b);
        const Curve& red = A.color == Color::Red ? A : B;
        const Curve& blue = A.color == Color::Red ? B : A;
        int vr = vertex_for(red.id), vb = vertex_for(blue.id);
        int e = static_cast<int>(g.edges.size());
        g.edges.emplace_back(vr, vb);
        g.edge_points.push_back(tp.point);

        auto part_for = [&](const Curve& c, int vtx) {
            int pi = vertex_index_of_point(c.polyline, tp.point);
            if (pi < 0)
                throw std::invalid_argument("tangency point is not a polyline vertex of curve " +
                                            std::to_string(c.id));
            int bi = vertex_index_of_point(c.polyline, g.base_points[vtx]);
            if (bi < 0)
                throw std::invalid_argument("base point is not on curve " +
                                            std::to_string(c.id));
            EdgePart part;
            part.curve = c.id;
            part.edge = e;
            part.carrier = bi <= pi ? sub_polyline(c.polyline, bi, pi)
                                    : sub_polyline(c.polyline, pi, bi);
            return part;
        };
        g.edge_parts.push_back({part_for(red, vr), part_for(blue, vb)});
    }

    // Bichromatic parts of distinct curves that properly cross; parts of the
    // same curve or color never enter the relation.
    for (size_t e1 = 0; e1 < g.edge_parts.size(); ++e1)
        for (size_t e2 = e1; e2 < g.edge_parts.size(); ++e2)
            for (int s1 = 0; s1 < 2; ++s1)
                for (int s2 = (e1 == e2 ? s1 + 1 : 0); s2 < 2; ++s2) {
                    const EdgePart& pa = g.edge_parts[e1][s1];
                    const EdgePart& pb = g.edge_parts[e2][s2];
                    if (s1 == s2) continue;               // same color
                    if (pa.curve == pb.curve) continue;   // same curve
                    if (parts_cross(pa, pb))
                        g.crossing_relation.emplace_back(
                            static_cast<int>(2 * e1 + s1), static_cast<int>(2 * e2 + s2));
                }
    return g;
}

// ---- claim checks ----------------------------------------------------------

ClaimP2Report check_claim_p2(const DrawnBipartiteGraph& g) {
    ClaimP2Report rep;
    std::set<std::pair<int, int>> rel;
    for (auto [a, b] : g.crossing_relation) {
        rel.insert({std::min(a, b), std::max(a, b)});
    }
    auto crossing = [&](int part_a, int part_b) {
        return rel.count({std::min(part_a, part_b), std::max(part_a, part_b)}) > 0;
    };
    auto part_key = [](int edge, int side) { return 2 * edge + side; };

    int m = static_cast<int>(g.edges.size());
    std::vector<std::vector<int>> at_vertex(g.curve_ids.size());
    for (int e = 0; e < m; ++e) {
        at_vertex[g.edges[e].first].push_back(e);
        at_vertex[g.edges[e].second].push_back(e);
    }

    auto check_group = [&](const std::vector<int>& parts, const std::string& label) {
        for (size_t i = 0; i < parts.size(); ++i)
            for (size_t j = i + 1; j < parts.size(); ++j)
                if (crossing(parts[i], parts[j]))
                    rep.violations.push_back(label + ": parts " + std::to_string(parts[i]) +
                                             " and " + std::to_string(parts[j]) + " cross");
    };

    // Two-edge paths.
    for (size_t v = 0; v < at_vertex.size(); ++v) {
        const auto& es = at_vertex[v];
        for (size_t i = 0; i < es.size(); ++i)
            for (size_t j = i + 1; j < es.size(); ++j) {
                ++rep.paths2_checked;
                check_group({part_key(es[i], 0), part_key(es[i], 1), part_key(es[j], 0),
                             part_key(es[j], 1)},
                            "2-edge path at vertex " + std::to_string(v));
            }
    }

    // Four-cycles.
    std::set<std::pair<int, int>> edge_set;
    std::map<std::pair<int, int>, int> edge_id;
    for (int e = 0; e < m; ++e) {
        edge_set.insert(g.edges[e]);
        edge_id[g.edges[e]] = e;
    }
    std::vector<int> reds, blues;
    for (size_t v = 0; v < g.curve_ids.size(); ++v)
        (g.colors[v] == Color::Red ? reds : blues).push_back(static_cast<int>(v));
    for (size_t i = 0; i < reds.size(); ++i)
        for (size_t j = i + 1; j < reds.size(); ++j)
            for (size_t a = 0; a < blues.size(); ++a)
                for (size_t b = a + 1; b < blues.size(); ++b) {
                    int r1 = reds[i], r2 = reds[j], b1 = blues[a], b2 = blues[b];
                    if (!edge_set.count({r1, b1}) || !edge_set.count({r1, b2}) ||
                        !edge_set.count({r2, b1}) || !edge_set.count({r2, b2}))
                        continue;
                    ++rep.cycles4_checked;
                    std::vector<int> parts;
                    for (auto pr : {std::pair{r1, b1}, {r1, b2}, {r2, b1}, {r2, b2}}) {
                        int e = edge_id.at(pr);
                        parts.push_back(part_key(e, 0));
                        parts.push_back(part_key(e, 1));
                    }
                    check_group(parts, "4-cycle");
                }

    // Windows of 5 consecutive edge-parts on walks of three edges. Walking an
    // edge from vertex u exits through u's part first.
    auto walk_parts = [&](int e, int enter_vertex) {
        int side_enter = g.edges[e].first == enter_vertex ? 0 : 1;
        return std::array<int, 2>{part_key(e, side_enter), part_key(e, 1 - side_enter)};
    };
    for (int e2 = 0; e2 < m; ++e2) {
        for (int v1 : {g.edges[e2].first, g.edges[e2].second}) {
            int v2 = g.edges[e2].first == v1 ? g.edges[e2].second : g.edges[e2].first;
            for (int e1 : at_vertex[v1]) {
                if (e1 == e2) continue;
                for (int e3 : at_vertex[v2]) {
                    if (e3 == e2) continue;
                    int u0 = g.edges[e1].first == v1 ? g.edges[e1].second : g.edges[e1].first;
                    auto p1 = walk_parts(e1, u0);
                    auto p2 = walk_parts(e2, v1);
                    auto p3 = walk_parts(e3, v2);
                    std::array<int, 6> seq{p1[0], p1[1], p2[0], p2[1], p3[0], p3[1]};
                    for (int w = 0; w < 2; ++w) {
                        ++rep.walk_windows_checked;
                        std::vector<int> win(seq.begin() + w, seq.begin() + w + 5);
                        check_group(win, "5-part window");
                    }
                }
            }
        }
    }

    std::sort(rep.violations.begin(), rep.violations.end());
    rep.violations.erase(std::unique(rep.violations.begin(), rep.violations.end()),
                         rep.violations.end());
    rep.ok = rep.violations.empty();
    return rep;
}

// ---- forbidden P5 ----------------------------------------------------------

namespace {

struct P5Search {
    const EdgeOrderedGraph& g;
    std::vector<std::vector<int>> adj;
    std::map<std::pair<int, int>, int> rank;

    explicit P5Search(const EdgeOrderedGraph& graph) : g(graph) {
        adj.resize(g.vertex_count);
        for (size_t e = 0; e < g.edges.size(); ++e) {
            auto [u, v] = g.edges[e];
            adj[u].push_back(v);
            adj[v].push_back(u);
            rank[{std::min(u, v), std::max(u, v)}] = g.order[e];
        }
    }

    int rk(int u, int v) const { return rank.at({std::min(u, v), std::max(u, v)}); }

    bool matches(int a, int b, int c, int d, int e) const {
        return rk(a, b) < rk(c, d) && rk(c, d) < rk(b, c) && rk(b, c) < rk(d, e);
    }
};

}  // namespace

std::optional<P5Witness> contains_forbidden_p5(const EdgeOrderedGraph& g) {
    g.validate();
    P5Search s(g);
    for (int a = 0; a < g.vertex_count; ++a)
        for (int b : s.adj[a])
            for (int c : s.adj[b]) {
                if (c == a) continue;
                for (int d : s.adj[c]) {
                    if (d == a || d == b) continue;
                    for (int e : s.adj[d]) {
                        if (e == a || e == b || e == c) continue;
                        if (s.matches(a, b, c, d, e))
                            return P5Witness{{a, b, c, d, e}};
                    }
                }
            }
    return std::nullopt;
}

std::optional<P5Witness> contains_forbidden_p5_naive(const EdgeOrderedGraph& g) {
    g.validate();
    P5Search s(g);
    std::set<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges) edges.insert({std::min(u, v), std::max(u, v)});
    auto has = [&](int u, int v) { return edges.count({std::min(u, v), std::max(u, v)}) > 0; };
    int n = g.vertex_count;
    std::array<int, 5> t{};
    for (t[0] = 0; t[0] < n; ++t[0])
        for (t[1] = 0; t[1] < n; ++t[1])
            for (t[2] = 0; t[2] < n; ++t[2])
                for (t[3] = 0; t[3] < n; ++t[3])
                    for (t[4] = 0; t[4] < n; ++t[4]) {
                        bool distinct = true;
                        for (int i = 0; i < 5 && distinct; ++i)
                            for (int j = i + 1; j < 5; ++j)
                                if (t[i] == t[j]) { distinct = false; break; }
                        if (!distinct) continue;
                        if (has(t[0], t[1]) && has(t[1], t[2]) && has(t[2], t[3]) &&
                            has(t[3], t[4]) && s.matches(t[0], t[1], t[2], t[3], t[4]))
                            return P5Witness{{t[0], t[1], t[2], t[3], t[4]}};
                    }
    return std::nullopt;
}

// ---- x-monotone split ------------------------------------------------------

namespace {

// Slopes of the two branches of an x-monotone polyline at an interior point.
// first = left branch, second = right branch, both as (dx, dy) with dx > 0.
std::pair<Point, Point> xmon_branches(const Polyline& pl, const Point& p) {
    for (size_t i = 0; i + 1 < pl.vertices.size(); ++i) {
        Segment s{pl.vertices[i], pl.vertices[i + 1]};
        if (!point_on_segment(p, s)) continue;
        Point L, R;
        if (p == s.a) {
            if (i == 0) throw std::invalid_argument("tangency at a curve endpoint");
            L = pl.vertices[i - 1];
            R = s.b;
        } else if (p == s.b) {
            if (i + 2 >= pl.vertices.size())
                throw std::invalid_argument("tangency at a curve endpoint");
            L = s.a;
            R = pl.vertices[i + 2];
        } else {
            L = s.a;
            R = s.b;
        }
        return {Point{p.x - L.x, p.y - L.y}, Point{R.x - p.x, R.y - p.y}};
    }
    throw std::invalid_argument("tangency point not on curve");
}

}  // namespace

std::pair<EdgeOrderedGraph, EdgeOrderedGraph> xmon_tangency_graphs(
    const CurveFamily& family, const TangencyReport& report) {
    std::map<int, int> vtx;
    std::map<int, const Curve*> by_id;
    for (size_t i = 0; i < family.curves.size(); ++i) {
        vtx[family.curves[i].id] = static_cast<int>(i);
        by_id[family.curves[i].id] = &family.curves[i];
        if (!is_x_monotone(family.curves[i].polyline))
            throw std::invalid_argument("curve " + std::to_string(family.curves[i].id) +
                                        " is not x-monotone");
    }
    {
        std::set<Rational> xs;
        for (const auto& tp : report.tangent_pairs)
            if (!xs.insert(tp.point.x).second)
                throw std::invalid_argument(
                    "two tangencies share x = " + rat_str(tp.point.x) +
                    "; perturb the input");
    }

    struct Item { int u, v; Rational x; };
    std::vector<Item> above, below;
    for (const auto& tp : report.tangent_pairs) {
        const Curve& A = *by_id.at(tp.curve_a);
        const Curve& B = *by_id.at(tp.curve_b);
        const Curve& red = A.color == Color::Red ? A : B;
        const Curve& blue = A.color == Color::Red ? B : A;
        auto [rl, rr] = xmon_branches(red.polyline, tp.point);
        auto [bl, br] = xmon_branches(blue.polyline, tp.point);
        // Red above on the right means a steeper rightward branch.
        int right_cmp = sign_of(br.x * rr.y - br.y * rr.x);
        int left_cmp = sign_of(rl.x * bl.y - rl.y * bl.x);
        if (right_cmp == 0 || left_cmp == 0 || right_cmp != left_cmp)
            throw std::invalid_argument("inconsistent local sides at a touching");
        Item it{vtx.at(red.id), vtx.at(blue.id), tp.point.x};
        if (right_cmp > 0) above.push_back(it); else below.push_back(it);
    }

    auto build = [&](std::vector<Item>& items) {
        std::sort(items.begin(), items.end(),
                  [](const Item& a, const Item& b) { return a.x < b.x; });
        EdgeOrderedGraph g;
        g.vertex_count = static_cast<int>(family.curves.size());
        for (size_t i = 0; i < items.size(); ++i) {
            g.edges.emplace_back(items[i].u, items[i].v);
            g.order.push_back(static_cast<int>(i) + 1);
        }
        return g;
    };
    return {build(above), build(below)};
}

// ---- ordered adjacency matrix ----------------------------------------------

ZeroOneMatrix ordered_adjacency_matrix(const DrawnBipartiteGraph& g) {
    if (!g.grounded_bases)
        throw std::invalid_argument("ordered adjacency matrix needs grounded base points");
    std::vector<std::pair<Rational, int>> reds, blues;
    for (size_t v = 0; v < g.curve_ids.size(); ++v)
        (g.colors[v] == Color::Red ? reds : blues).emplace_back(g.base_points[v].y,
                                                                static_cast<int>(v));
    auto sort_distinct = [](std::vector<std::pair<Rational, int>>& vs, const char* side) {
        std::sort(vs.begin(), vs.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (size_t i = 1; i < vs.size(); ++i)
            if (vs[i].first == vs[i - 1].first)
                throw std::invalid_argument(std::string("duplicate base heights on the ") +
                                            side + " boundary");
    };
    sort_distinct(reds, "left");
    sort_distinct(blues, "right");

    std::map<int, int> row_of, col_of;
    for (size_t i = 0; i < reds.size(); ++i) row_of[reds[i].second] = static_cast<int>(i);
    for (size_t i = 0; i < blues.size(); ++i) col_of[blues[i].second] = static_cast<int>(i);

    ZeroOneMatrix m;
    m.rows = static_cast<int>(reds.size());
    m.cols = static_cast<int>(blues.size());
    for (const auto& [vr, vb] : g.edges) m.ones.insert({row_of.at(vr), col_of.at(vb)});
    return m;
}

// ---- positive C6 -----------------------------------------------------------

namespace {

// The 2-regular 3x3 patterns are complements of permutation matrices; the
// ones through the middle cell come from permutations that move index 1.
const std::array<std::array<int, 3>, 4> kCenterPerms = {{
    {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1},
}};

bool has_center_cycle(const ZeroOneMatrix& m, const std::array<int, 3>& r,
                      const std::array<int, 3>& c) {
    for (const auto& perm : kCenterPerms) {
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i)
            for (int j = 0; j < 3 && ok; ++j)
                if (perm[i] != j && !m.at(r[i], c[j])) ok = false;
        if (ok) return true;
    }
    return false;
}

}  // namespace

std::optional<C6Witness> contains_positive_c6(const ZeroOneMatrix& m) {
    for (int r1 = 0; r1 < m.rows; ++r1)
        for (int r2 = r1 + 1; r2 < m.rows; ++r2)
            for (int r3 = r2 + 1; r3 < m.rows; ++r3)
                for (int c1 = 0; c1 < m.cols; ++c1)
                    for (int c2 = c1 + 1; c2 < m.cols; ++c2)
                        for (int c3 = c2 + 1; c3 < m.cols; ++c3) {
                            std::array<int, 3> rr{r1, r2, r3}, cc{c1, c2, c3};
                            if (has_center_cycle(m, rr, cc))
                                return C6Witness{rr, cc};
                        }
    return std::nullopt;
}

std::optional<C6Witness> contains_positive_c6_graphside(const ZeroOneMatrix& m) {
    // Walk actual 6-cycles u_x v_p u_y v_q u_z v_s and test positivity.
    for (int x = 0; x < m.rows; ++x)
        for (int y = 0; y < m.rows; ++y)
            for (int z = 0; z < m.rows; ++z) {
                if (x == y || y == z || x == z) continue;
                for (int p = 0; p < m.cols; ++p)
                    for (int q = 0; q < m.cols; ++q)
                        for (int s = 0; s < m.cols; ++s) {
                            if (p == q || q == s || p == s) continue;
                            if (!(m.at(x, p) && m.at(y, p) && m.at(y, q) && m.at(z, q) &&
                                  m.at(z, s) && m.at(x, s)))
                                continue;
                            std::array<int, 3> rr{x, y, z}, cc{p, q, s};
                            std::sort(rr.begin(), rr.end());
                            std::sort(cc.begin(), cc.end());
                            int u2 = rr[1], v2 = cc[1];
                            // Is u2v2 one of the cycle's six edges?
                            bool on_cycle =
                                (u2 == x && (v2 == p || v2 == s)) ||
                                (u2 == y && (v2 == p || v2 == q)) ||
                                (u2 == z && (v2 == q || v2 == s));
                            if (on_cycle) return C6Witness{rr, cc};
                        }
            }
    return std::nullopt;
}

bool matrix_c4_free(const ZeroOneMatrix& m) {
    for (int r1 = 0; r1 < m.rows; ++r1)
        for (int r2 = r1 + 1; r2 < m.rows; ++r2) {
            int common = 0;
            for (int c = 0; c < m.cols; ++c)
                if (m.at(r1, c) && m.at(r2, c)) ++common;
            if (common >= 2) return false;
        }
    return true;
}

// ---- extremal brute force ---------------------------------------------------

namespace {

// Depth-first rank assignment with pruning on completed path patterns.
struct OrderSearch {
    int m;
    // patterns: edge index tuples (ab, bc, cd, de); violated iff
    // rank(ab) < rank(cd) < rank(bc) < rank(de).
    std::vector<std::array<int, 4>> patterns;
    std::vector<int> rank;  // 0 = unassigned
    std::vector<int> out;

    bool violated_complete(const std::array<int, 4>& p) const {
        int ab = rank[p[0]], bc = rank[p[1]], cd = rank[p[2]], de = rank[p[3]];
        if (!ab || !bc || !cd || !de) return false;
        return ab < cd && cd < bc && bc < de;
    }

    bool dfs(int next_rank) {
        if (next_rank > m) {
            out = rank;
            return true;
        }
        for (int e = 0; e < m; ++e) {
            if (rank[e]) continue;
            rank[e] = next_rank;
            bool ok = true;
            for (const auto& p : patterns)
                if ((p[0] == e || p[1] == e || p[2] == e || p[3] == e) &&
                    violated_complete(p)) {
                    ok = false;
                    break;
                }
            if (ok && dfs(next_rank + 1)) return true;
            rank[e] = 0;
        }
        return false;
    }
};

}  // namespace

ExtremalP5Result extremal_bruteforce_p5(int n) {
    if (n < 1 || n > 5) throw std::invalid_argument("p5 brute force supports 1 <= n <= 5");
    std::vector<std::pair<int, int>> all_edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) all_edges.emplace_back(u, v);
    int total = static_cast<int>(all_edges.size());

    for (int m = total; m >= 0; --m) {
        // All edge subsets of size m, lexicographically.
        std::vector<int> pick(m);
        std::iota(pick.begin(), pick.end(), 0);
        for (;;) {
            EdgeOrderedGraph g;
            g.vertex_count = n;
            for (int idx : pick) g.edges.push_back(all_edges[idx]);

            // Enumerate path patterns of this graph once.
            std::map<std::pair<int, int>, int> eid;
            for (size_t e = 0; e < g.edges.size(); ++e) eid[g.edges[e]] = static_cast<int>(e);
            auto edge_of = [&](int u, int v) -> int {
                auto it = eid.find({std::min(u, v), std::max(u, v)});
                return it == eid.end() ? -1 : it->second;
            };
            std::vector<std::vector<int>> adj(n);
            for (auto [u, v] : g.edges) {
                adj[u].push_back(v);
                adj[v].push_back(u);
            }
            OrderSearch os;
            os.m = m;
            os.rank.assign(m, 0);
            for (int a = 0; a < n; ++a)
                for (int b : adj[a])
                    for (int c : adj[b]) {
                        if (c == a) continue;
                        for (int d : adj[c]) {
                            if (d == a || d == b) continue;
                            for (int e = 0; e < n; ++e) {
                                if (e == a || e == b || e == c || e == d) continue;
                                int de = edge_of(d, e);
                                if (de < 0) continue;
                                os.patterns.push_back({edge_of(a, b), edge_of(b, c),
                                                       edge_of(c, d), de});
                            }
                        }
                    }
            if (m == 0 || os.dfs(1)) {
                ExtremalP5Result res;
                res.max_edges = m;
                res.witness = g;
                res.witness.order = m == 0 ? std::vector<int>{} : os.out;
                if (m > 0 && contains_forbidden_p5(res.witness))
                    throw std::logic_error("witness fails its own pattern check");
                return res;
            }

            // next combination
            int i = m - 1;
            while (i >= 0 && pick[i] == total - m + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

struct C6Search {
    int n;
    std::vector<int> cells;  // -1 undecided, 0, 1 in row-major order
    int best = -1;
    std::vector<int> best_cells;

    // Patterns completing at each cell: row/col triples whose max cell in
    // row-major order is this cell.
    std::vector<std::vector<std::pair<std::array<int, 3>, std::array<int, 3>>>> completing;

    explicit C6Search(int n_) : n(n_), cells(n_ * n_, -1), completing(n_ * n_) {
        for (int r1 = 0; r1 < n; ++r1)
            for (int r2 = r1 + 1; r2 < n; ++r2)
                for (int r3 = r2 + 1; r3 < n; ++r3)
                    for (int c1 = 0; c1 < n; ++c1)
                        for (int c2 = c1 + 1; c2 < n; ++c2)
                            for (int c3 = c2 + 1; c3 < n; ++c3)
                                completing[r3 * n + std::max({c1, c2, c3})].push_back(
                                    {{r1, r2, r3}, {c1, c2, c3}});
    }

    bool triple_has_center_cycle(const std::array<int, 3>& r, const std::array<int, 3>& c) {
        ZeroOneMatrix m;
        m.rows = m.cols = n;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (cells[i * n + j] == 1) m.ones.insert({i, j});
        return has_center_cycle(m, r, c);
    }

    void dfs(int cell, int ones_so_far) {
        int remaining = n * n - cell;
        if (ones_so_far + remaining <= best) return;
        if (cell == n * n) {
            if (ones_so_far > best) {
                best = ones_so_far;
                best_cells = cells;
            }
            return;
        }
        for (int v : {1, 0}) {
            cells[cell] = v;
            bool ok = true;
            if (v == 1) {
                for (const auto& [rr, cc] : completing[cell])
                    if (triple_has_center_cycle(rr, cc)) { ok = false; break; }
            } else {
                for (const auto& [rr, cc] : completing[cell])
                    if (triple_has_center_cycle(rr, cc)) { ok = false; break; }
            }
            if (ok) dfs(cell + 1, ones_so_far + v);
            cells[cell] = -1;
        }
    }
};

}  // namespace

ExtremalC6Result extremal_bruteforce_positive_c6(int n) {
    if (n < 1 || n > 6)
        throw std::invalid_argument("positive-C6 brute force supports 1 <= n <= 6");
    ExtremalC6Result res;
    res.witness.rows = res.witness.cols = n;
    if (n <= 2) {
        // No 3x3 submatrix exists; all-ones is extremal.
        res.max_ones = n * n;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) res.witness.ones.insert({r, c});
        return res;
    }
    C6Search s(n);
    s.dfs(0, 0);
    res.max_ones = s.best;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (s.best_cells[r * n + c] == 1) res.witness.ones.insert({r, c});
    if (contains_positive_c6(res.witness))
        throw std::logic_error("extremal witness contains the forbidden pattern");
    return res;
}

}  // namespace tanglab
