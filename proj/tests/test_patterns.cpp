#include "tanglab/patterns.hpp"
#include "tanglab/synthesis.hpp"

#include <doctest.h>

#include <array>

using namespace tanglab;

namespace {

// Deterministic generator for the cross-validation properties.
struct XorShift {
    uint64_t state;
    explicit XorShift(uint64_t seed) : state(seed ? seed : 0x9e3779b9) {}
    uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
};

EdgeOrderedGraph path5_with_order(int o_ab, int o_bc, int o_cd, int o_de) {
    EdgeOrderedGraph g;
    g.vertex_count = 5;
    g.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}};
    g.order = {o_ab, o_bc, o_cd, o_de};
    return g;
}

}  // namespace

TEST_CASE("graphs with too few edges never contain the pattern") {
    EdgeOrderedGraph g;
    g.vertex_count = 4;
    g.edges = {{0, 1}, {1, 2}, {2, 3}};
    g.order = {1, 2, 3};
    CHECK_FALSE(contains_forbidden_p5(g).has_value());
}

TEST_CASE("the forbidden order on a 5-path is detected, others are not") {
    CHECK(contains_forbidden_p5(path5_with_order(1, 3, 2, 4)).has_value());
    CHECK_FALSE(contains_forbidden_p5(path5_with_order(1, 2, 3, 4)).has_value());

    // Exactly two of the 24 orders match: the pattern read forwards and read
    // backwards along the path.
    std::array<int, 4> ranks{1, 2, 3, 4};
    int hits = 0;
    std::sort(ranks.begin(), ranks.end());
    do {
        auto g = path5_with_order(ranks[0], ranks[1], ranks[2], ranks[3]);
        bool fast = contains_forbidden_p5(g).has_value();
        bool slow = contains_forbidden_p5_naive(g).has_value();
        CHECK(fast == slow);
        if (fast) ++hits;
    } while (std::next_permutation(ranks.begin(), ranks.end()));
    CHECK(hits == 2);
}

TEST_CASE("p5 detectors agree on random graphs") {
    XorShift rng(12345);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 5 + rng.below(4);
        EdgeOrderedGraph g;
        g.vertex_count = n;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.below(100) < 45) g.edges.emplace_back(u, v);
        g.order.resize(g.edges.size());
        for (size_t i = 0; i < g.order.size(); ++i) g.order[i] = static_cast<int>(i) + 1;
        for (size_t i = g.order.size(); i > 1; --i)
            std::swap(g.order[i - 1], g.order[rng.below(static_cast<int>(i))]);
        CHECK(contains_forbidden_p5(g).has_value() ==
              contains_forbidden_p5_naive(g).has_value());
    }
}

TEST_CASE("positive C6 detection on small matrices") {
    ZeroOneMatrix all;
    all.rows = all.cols = 3;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) all.ones.insert({r, c});
    CHECK(contains_positive_c6(all).has_value());
    CHECK(contains_positive_c6_graphside(all).has_value());

    ZeroOneMatrix diag;
    diag.rows = diag.cols = 5;
    for (int i = 0; i < 5; ++i) diag.ones.insert({i, i});
    CHECK_FALSE(contains_positive_c6(diag).has_value());

    // A 6-cycle avoiding the middle cell is not positive.
    ZeroOneMatrix ring;
    ring.rows = ring.cols = 3;
    ring.ones = {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 0}};
    CHECK(contains_positive_c6(ring).has_value() ==
          contains_positive_c6_graphside(ring).has_value());
}

TEST_CASE("c6 detectors agree on random matrices") {
    XorShift rng(777);
    for (int trial = 0; trial < 80; ++trial) {
        ZeroOneMatrix m;
        m.rows = 3 + rng.below(6);
        m.cols = 3 + rng.below(6);
        for (int r = 0; r < m.rows; ++r)
            for (int c = 0; c < m.cols; ++c)
                if (rng.below(100) < 40) m.ones.insert({r, c});
        CHECK(contains_positive_c6(m).has_value() ==
              contains_positive_c6_graphside(m).has_value());
    }
}

TEST_CASE("matrix C4 freeness") {
    ZeroOneMatrix m;
    m.rows = m.cols = 3;
    m.ones = {{0, 0}, {0, 1}, {1, 1}, {2, 2}};
    CHECK(matrix_c4_free(m));
    m.ones.insert({1, 0});
    CHECK_FALSE(matrix_c4_free(m));
}

TEST_CASE("extremal searches at trivial sizes") {
    auto p4 = extremal_bruteforce_p5(4);
    CHECK(p4.max_edges == 6);  // the pattern needs five vertices
    auto c2 = extremal_bruteforce_positive_c6(2);
    CHECK(c2.max_ones == 4);
    auto c3 = extremal_bruteforce_positive_c6(3);
    CHECK(c3.max_ones <= 8);  // the all-ones matrix is excluded
    CHECK(c3.max_ones >= 6);
    CHECK_FALSE(contains_positive_c6(c3.witness).has_value());
    CHECK(extremal_bruteforce_positive_c6(2).max_ones <=
          extremal_bruteforce_positive_c6(3).max_ones + 5);  // sanity only
    CHECK_THROWS(extremal_bruteforce_p5(6));
    CHECK_THROWS(extremal_bruteforce_positive_c6(7));
}

TEST_CASE("star redrawing of the k=1 pipeline family") {
    auto raw = generate_grid_system(1);
    auto sys = shear_normalize(raw, default_shear(raw));
    SynthesisResult res = synthesize_family(sys);
    auto rep = tangency_report(res.family);
    auto drawn = star_redraw(res.family, rep, BaseChoice::CurveStart);
    CHECK(drawn.curve_ids.size() == 2);
    CHECK(drawn.edges.size() == 1);
    CHECK(drawn.crossing_relation.empty());
    auto claim = check_claim_p2(drawn);
    CHECK(claim.ok);
    CHECK(claim.paths2_checked == 0);  // a single edge has no 2-edge paths
}

TEST_CASE("a fabricated crossing pair on a shared path is reported") {
    DrawnBipartiteGraph g;
    g.curve_ids = {10, 20, 30};             // red, blue, red
    g.colors = {Color::Red, Color::Blue, Color::Red};
    g.base_points = {pt(0, 0), pt(5, 5), pt(10, 0)};
    g.edges = {{0, 1}, {2, 1}};
    g.edge_points = {pt(2, 2), pt(8, 2)};
    EdgePart a0{10, 0, Polyline{{pt(0, 0), pt(2, 2)}}};
    EdgePart a1{20, 0, Polyline{{pt(5, 5), pt(2, 2)}}};
    EdgePart b0{30, 1, Polyline{{pt(10, 0), pt(8, 2)}}};
    EdgePart b1{20, 1, Polyline{{pt(5, 5), pt(8, 2)}}};
    g.edge_parts = {{a0, a1}, {b0, b1}};
    g.crossing_relation = {{0, 3}};  // red part of edge 0 crosses blue part of edge 1
    auto rep = check_claim_p2(g);
    CHECK_FALSE(rep.ok);
    CHECK(rep.paths2_checked == 1);
}

TEST_CASE("x-monotone fixture splits into pattern-free ordered graphs") {
    CurveFamily fam;
    fam.box = Box{rat(-20), rat(20), rat(-20), rat(20)};
    auto add = [&](int id, Color col, std::initializer_list<Point> pts) {
        Curve c;
        c.id = id;
        c.color = col;
        c.polyline.vertices = pts;
        fam.curves.push_back(c);
    };
    // Three flat red curves and three blue zigzags between the bands; four
    // x-distinct tangencies, two from below and two from above.
    add(0, Color::Red, {pt(-12, 0), pt(12, 0)});
    add(1, Color::Red, {pt(-12, 4), pt(12, 4)});
    add(2, Color::Red, {pt(-12, 8), pt(12, 8)});
    add(3, Color::Blue, {pt(-10, 2), pt(-8, 0), pt(-6, 2), pt(-4, 4), pt(-2, 2)});
    add(4, Color::Blue, {pt(-1, 6), pt(1, 4), pt(3, 6), pt(5, 8), pt(7, 6)});
    add(5, Color::Blue, {pt(6, 2), pt(8, 1), pt(10, 2)});

    auto rep = tangency_report(fam);
    REQUIRE(rep.total_tangencies == 4);
    auto [g1, g2] = xmon_tangency_graphs(fam, rep);
    CHECK(g1.edges.size() + g2.edges.size() == 4);
    CHECK(g1.edges.size() == 2);  // red above: blue tips poking up from below
    CHECK_FALSE(contains_forbidden_p5(g1).has_value());
    CHECK_FALSE(contains_forbidden_p5(g2).has_value());
}

TEST_CASE("xmon split rejects non-monotone curves and tied x-coordinates") {
    CurveFamily fam;
    fam.box = Box{rat(-20), rat(20), rat(-20), rat(20)};
    Curve red;
    red.id = 0;
    red.color = Color::Red;
    red.polyline.vertices = {pt(-5, 0), pt(0, 3), pt(-1, 6)};
    fam.curves = {red};
    TangencyReport rep;
    CHECK_THROWS(xmon_tangency_graphs(fam, rep));
}
