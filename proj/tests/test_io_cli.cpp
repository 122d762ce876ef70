#include "tanglab/json_io.hpp"
#include "tanglab/svg.hpp"
#include "tanglab/synthesis.hpp"

#include <doctest.h>

using namespace tanglab;

TEST_CASE("point line system json round trip") {
    auto raw = generate_grid_system(2);
    auto sys = shear_normalize(raw, 9);
    auto back = point_line_system_from_json(to_json(sys));
    CHECK(back.k == sys.k);
    REQUIRE(back.points.size() == sys.points.size());
    for (size_t i = 0; i < sys.points.size(); ++i) CHECK(back.points[i] == sys.points[i]);
    REQUIRE(back.lines.size() == sys.lines.size());
    for (size_t i = 0; i < sys.lines.size(); ++i) {
        CHECK(back.lines[i].slope == sys.lines[i].slope);
        CHECK(back.lines[i].intercept == sys.lines[i].intercept);
    }
    CHECK(back.incidences == sys.incidences);
}

TEST_CASE("curve family json round trip keeps exact coordinates") {
    auto raw = generate_grid_system(1);
    auto sys = shear_normalize(raw, default_shear(raw));
    SynthesisResult res = synthesize_family(sys);
    CurveFamily grounded = to_doubly_grounded(res.family);
    auto back = curve_family_from_json(to_json(grounded));
    CHECK(back.grounded);
    REQUIRE(back.strip.has_value());
    CHECK(back.strip->first == grounded.strip->first);
    CHECK(back.strip->second == grounded.strip->second);
    REQUIRE(back.curves.size() == grounded.curves.size());
    for (size_t i = 0; i < back.curves.size(); ++i) {
        CHECK(back.curves[i].id == grounded.curves[i].id);
        CHECK(back.curves[i].color == grounded.curves[i].color);
        REQUIRE(back.curves[i].polyline.size() == grounded.curves[i].polyline.size());
        for (size_t v = 0; v < back.curves[i].polyline.size(); ++v)
            CHECK(back.curves[i].polyline.vertices[v] == grounded.curves[i].polyline.vertices[v]);
        CHECK(back.curves[i].declared_tangencies.size() ==
              grounded.curves[i].declared_tangencies.size());
    }
}

TEST_CASE("graph and matrix json round trips validate") {
    EdgeOrderedGraph g;
    g.vertex_count = 4;
    g.edges = {{0, 1}, {1, 2}, {2, 3}};
    g.order = {2, 1, 3};
    auto gb = edge_ordered_graph_from_json(to_json(g));
    CHECK(gb.edges == g.edges);
    CHECK(gb.order == g.order);
    CHECK_THROWS(edge_ordered_graph_from_json(R"({"n":2,"edges":[[0,1]],"order":[2]})"));

    ZeroOneMatrix m;
    m.rows = 2;
    m.cols = 3;
    m.ones = {{0, 0}, {1, 2}};
    auto mb = zero_one_matrix_from_json(to_json(m));
    CHECK(mb.ones == m.ones);
    CHECK_THROWS(zero_one_matrix_from_json(R"({"rows":2,"cols":2,"ones":[[5,0]]})"));
}

TEST_CASE("rationals serialize canonically") {
    CHECK(rat_str(rat(4, 8)) == "1/2");
    CHECK(rat_str(rat(-4, 8)) == "-1/2");
    CHECK(rat_str(rat(3)) == "3/1");
}

TEST_CASE("svg output is deterministic and styled per color") {
    auto raw = generate_grid_system(1);
    auto sys = shear_normalize(raw, default_shear(raw));
    SynthesisResult res = synthesize_family(sys);
    auto rep = tangency_report(res.family);
    std::string one = render_svg(res.family, &rep);
    std::string two = render_svg(res.family, &rep);
    CHECK(one == two);

    size_t paths = 0, markers = 0;
    for (size_t pos = 0; (pos = one.find("<path", pos)) != std::string::npos; ++pos) ++paths;
    for (size_t pos = 0; (pos = one.find("<circle", pos)) != std::string::npos; ++pos) ++markers;
    CHECK(paths == res.family.curves.size());
    CHECK(markers == 1);
    CHECK(one.find("#d03030") != std::string::npos);
    CHECK(one.find("#3060c0") != std::string::npos);
    CHECK(one.find("stroke-dasharray") == std::string::npos);

    CurveFamily grounded = to_doubly_grounded(res.family);
    std::string gsvg = render_svg(grounded, nullptr);
    CHECK(gsvg.find("stroke-dasharray") != std::string::npos);  // strip boundaries
}
