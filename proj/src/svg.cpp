#include "tanglab/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace tanglab {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

std::string render_svg(const CurveFamily& family, const TangencyReport* report) {
    double xmin = rat_double(family.box.xmin), xmax = rat_double(family.box.xmax);
    double ymin = rat_double(family.box.ymin), ymax = rat_double(family.box.ymax);
    for (const auto& c : family.curves)
        for (const auto& v : c.polyline.vertices) {
            xmin = std::min(xmin, rat_double(v.x));
            xmax = std::max(xmax, rat_double(v.x));
            ymin = std::min(ymin, rat_double(v.y));
            ymax = std::max(ymax, rat_double(v.y));
        }
    double w = xmax - xmin, h = ymax - ymin;
    double pad = 0.03 * std::max(w, h);
    double scale = 1000.0 / std::max(w + 2 * pad, 1e-9);
    auto X = [&](double x) { return (x - xmin + pad) * scale; };
    auto Y = [&](double y) { return (ymax + pad - y) * scale; };  // y grows upward

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\""
        << fmt((h + 2 * pad) * scale) << "\" viewBox=\"0 0 1000 "
        << fmt((h + 2 * pad) * scale) << "\">\n";
    svg << "<rect x=\"" << fmt(X(rat_double(family.box.xmin))) << "\" y=\""
        << fmt(Y(rat_double(family.box.ymax))) << "\" width=\""
        << fmt((rat_double(family.box.xmax) - rat_double(family.box.xmin)) * scale)
        << "\" height=\""
        << fmt((rat_double(family.box.ymax) - rat_double(family.box.ymin)) * scale)
        << "\" fill=\"none\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";

    if (family.grounded && family.strip) {
        for (const Rational& sx : {family.strip->first, family.strip->second}) {
            double x = X(rat_double(sx));
            svg << "<line x1=\"" << fmt(x) << "\" y1=\"0\" x2=\"" << fmt(x) << "\" y2=\""
                << fmt((h + 2 * pad) * scale)
                << "\" stroke=\"#444\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n";
        }
    }

    for (const auto& c : family.curves) {
        svg << "<path d=\"";
        for (size_t i = 0; i < c.polyline.vertices.size(); ++i) {
            const auto& v = c.polyline.vertices[i];
            svg << (i == 0 ? "M" : " L") << fmt(X(rat_double(v.x))) << ","
                << fmt(Y(rat_double(v.y)));
        }
        svg << "\" fill=\"none\" stroke=\"" << (c.color == Color::Red ? "#d03030" : "#3060c0")
            << "\" stroke-width=\"1.2\"/>\n";
    }

    if (report) {
        for (const auto& tp : report->tangent_pairs)
            svg << "<circle cx=\"" << fmt(X(rat_double(tp.point.x))) << "\" cy=\""
                << fmt(Y(rat_double(tp.point.y)))
                << "\" r=\"3\" fill=\"none\" stroke=\"#101010\" stroke-width=\"1\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace tanglab
