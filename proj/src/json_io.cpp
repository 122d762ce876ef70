#include "tanglab/json_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tanglab {

using nlohmann::json;

namespace {

json rat_json(const Rational& q) { return rat_str(q); }

Rational rat_from(const json& j) {
    if (!j.is_string()) throw std::invalid_argument("rational must be a \"num/den\" string");
    return rat_parse(j.get<std::string>());
}

json point_json(const Point& p) { return json::array({rat_json(p.x), rat_json(p.y)}); }

Point point_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("point must be [x, y]");
    return Point{rat_from(j[0]), rat_from(j[1])};
}

}  // namespace

std::string to_json(const PointLineSystem& sys) {
    json j;
    j["k"] = sys.k;
    j["points"] = json::array();
    for (const auto& p : sys.points) j["points"].push_back(point_json(p));
    j["lines"] = json::array();
    for (const auto& l : sys.lines)
        j["lines"].push_back({{"slope", rat_json(l.slope)}, {"intercept", rat_json(l.intercept)}});
    j["incidences"] = json::array();
    for (const auto& [li, pi] : sys.incidences) j["incidences"].push_back({li, pi});
    return j.dump(2);
}

PointLineSystem point_line_system_from_json(const std::string& text) {
    json j = json::parse(text);
    PointLineSystem sys;
    sys.k = j.at("k").get<int>();
    for (const auto& p : j.at("points")) sys.points.push_back(point_from(p));
    for (const auto& l : j.at("lines"))
        sys.lines.push_back(Line{rat_from(l.at("slope")), rat_from(l.at("intercept"))});
    for (const auto& inc : j.at("incidences"))
        sys.incidences.emplace_back(inc.at(0).get<int>(), inc.at(1).get<int>());
    return sys;
}

std::string to_json(const CurveFamily& family) {
    json j;
    j["grounded"] = family.grounded;
    if (family.strip)
        j["strip"] = json::array({rat_json(family.strip->first), rat_json(family.strip->second)});
    else
        j["strip"] = nullptr;
    j["box"] = {{"xmin", rat_json(family.box.xmin)}, {"xmax", rat_json(family.box.xmax)},
                {"ymin", rat_json(family.box.ymin)}, {"ymax", rat_json(family.box.ymax)}};
    j["curves"] = json::array();
    for (const auto& c : family.curves) {
        json jc;
        jc["id"] = c.id;
        jc["color"] = c.color == Color::Red ? "red" : "blue";
        jc["source"] = c.source;
        jc["vertices"] = json::array();
        for (const auto& v : c.polyline.vertices) jc["vertices"].push_back(point_json(v));
        jc["declared_tangencies"] = json::array();
        for (const auto& dt : c.declared_tangencies)
            jc["declared_tangencies"].push_back(json::array({dt.other_id, point_json(dt.point)}));
        j["curves"].push_back(std::move(jc));
    }
    return j.dump(2);
}

CurveFamily curve_family_from_json(const std::string& text) {
    json j = json::parse(text);
    CurveFamily family;
    family.grounded = j.at("grounded").get<bool>();
    if (!j.at("strip").is_null())
        family.strip = std::make_pair(rat_from(j["strip"][0]), rat_from(j["strip"][1]));
    const json& b = j.at("box");
    family.box = Box{rat_from(b.at("xmin")), rat_from(b.at("xmax")), rat_from(b.at("ymin")),
                     rat_from(b.at("ymax"))};
    for (const auto& jc : j.at("curves")) {
        Curve c;
        c.id = jc.at("id").get<int>();
        std::string color = jc.at("color").get<std::string>();
        if (color != "red" && color != "blue")
            throw std::invalid_argument("curve color must be red or blue");
        c.color = color == "red" ? Color::Red : Color::Blue;
        c.source = jc.at("source").get<int>();
        for (const auto& v : jc.at("vertices")) c.polyline.vertices.push_back(point_from(v));
        if (jc.contains("declared_tangencies"))
            for (const auto& dt : jc["declared_tangencies"])
                c.declared_tangencies.push_back(
                    DeclaredTangency{dt.at(0).get<int>(), point_from(dt.at(1))});
        family.curves.push_back(std::move(c));
    }
    return family;
}

std::string to_json(const TangencyReport& report) {
    json j;
    j["total_tangencies"] = report.total_tangencies;
    j["crossing_pair_count"] = report.crossing_pair_count;
    j["tangent_pairs"] = json::array();
    for (const auto& tp : report.tangent_pairs)
        j["tangent_pairs"].push_back(
            json::array({tp.curve_a, tp.curve_b, point_json(tp.point)}));
    auto dump_events = [&](const std::vector<IntersectionEvent>& evs) {
        json arr = json::array();
        for (const auto& ev : evs) {
            const char* kind = ev.kind == EventKind::Crossing ? "crossing"
                : ev.kind == EventKind::Touching ? "touching"
                : ev.kind == EventKind::Overlap ? "overlap" : "endpoint_contact";
            arr.push_back({{"curve_a", ev.curve_a}, {"curve_b", ev.curve_b},
                           {"point", point_json(ev.point)}, {"kind", kind}});
        }
        return arr;
    };
    j["same_color_violations"] = dump_events(report.same_color_violations);
    j["overlap_violations"] = dump_events(report.overlap_violations);
    return j.dump(2);
}

std::string to_json(const EdgeOrderedGraph& g) {
    json j;
    j["n"] = g.vertex_count;
    j["edges"] = json::array();
    for (const auto& [u, v] : g.edges) j["edges"].push_back({u, v});
    j["order"] = g.order;
    return j.dump(2);
}

EdgeOrderedGraph edge_ordered_graph_from_json(const std::string& text) {
    json j = json::parse(text);
    EdgeOrderedGraph g;
    g.vertex_count = j.at("n").get<int>();
    for (const auto& e : j.at("edges"))
        g.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    g.order = j.at("order").get<std::vector<int>>();
    g.validate();
    return g;
}

std::string to_json(const ZeroOneMatrix& m) {
    json j;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    j["ones"] = json::array();
    for (const auto& [r, c] : m.ones) j["ones"].push_back({r, c});
    return j.dump(2);
}

ZeroOneMatrix zero_one_matrix_from_json(const std::string& text) {
    json j = json::parse(text);
    ZeroOneMatrix m;
    m.rows = j.at("rows").get<int>();
    m.cols = j.at("cols").get<int>();
    for (const auto& rc : j.at("ones")) {
        int r = rc.at(0).get<int>(), c = rc.at(1).get<int>();
        if (r < 0 || r >= m.rows || c < 0 || c >= m.cols)
            throw std::invalid_argument("one-entry out of range");
        m.ones.insert({r, c});
    }
    return m;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace tanglab
