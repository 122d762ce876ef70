#include "tanglab/incidence.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace tanglab {

PointLineSystem generate_grid_system(int k) {
    if (k < 1) throw std::invalid_argument("grid parameter k must be >= 1");
    PointLineSystem sys;
    sys.k = k;
    std::map<std::pair<long, long>, int> index_of;
    for (long x = 1; x <= k; ++x)
        for (long y = 1; y <= 2L * k * k; ++y) {
            index_of[{x, y}] = static_cast<int>(sys.points.size());
            sys.points.push_back(pt(x, y));
        }
    for (long m = 1; m <= k; ++m)
        for (long b = 1; b <= static_cast<long>(k) * k; ++b) {
            int li = static_cast<int>(sys.lines.size());
            sys.lines.push_back(Line{rat(m), rat(b)});
            for (long x = 1; x <= k; ++x) {
                long y = m * x + b;
                sys.incidences.emplace_back(li, index_of.at({x, y}));
            }
        }
    return sys;
}

long default_shear(const PointLineSystem& sys) {
    Rational maxy = 0;
    for (const auto& p : sys.points) maxy = rat_max(maxy, p.y);
    mpz_class f = maxy.get_num() / maxy.get_den();
    return f.get_si() + 1;
}

PointLineSystem shear_normalize(const PointLineSystem& sys, long M) {
    if (M <= 0) throw std::invalid_argument("shear parameter must be positive");
    PointLineSystem out;
    out.k = sys.k;
    out.incidences = sys.incidences;
    Rational rm = rat(M);
    for (const auto& p : sys.points)
        out.points.push_back(Point{rm * p.x + p.y, p.y});
    // y = s x + b maps to y = s/(M+s) x + b M/(M+s).
    for (const auto& l : sys.lines) {
        Rational den = rm + l.slope;
        if (den == 0) throw std::invalid_argument("shear parameter cancels a slope");
        out.lines.push_back(Line{l.slope / den, l.intercept * rm / den});
    }
    std::vector<Rational> xs;
    xs.reserve(out.points.size());
    for (const auto& p : out.points) xs.push_back(p.x);
    std::sort(xs.begin(), xs.end());
    for (size_t i = 1; i < xs.size(); ++i)
        if (xs[i] == xs[i - 1])
            throw std::invalid_argument("shear too small: output points share x = " +
                                        rat_str(xs[i]));
    return out;
}

long count_incidences_bruteforce(const PointLineSystem& sys) {
    long count = 0;
    for (const auto& l : sys.lines)
        for (const auto& p : sys.points)
            if (l.contains(p)) ++count;
    return count;
}

GeneralPositionReport verify_general_position(const PointLineSystem& sys) {
    GeneralPositionReport rep;
    for (size_t i = 0; i < sys.lines.size(); ++i)
        if (sys.lines[i].slope == 0) {
            rep.violations.push_back("horizontal line at index " + std::to_string(i));
        }
    {
        std::vector<std::pair<Rational, size_t>> xs;
        for (size_t i = 0; i < sys.points.size(); ++i) xs.emplace_back(sys.points[i].x, i);
        std::sort(xs.begin(), xs.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (size_t i = 1; i < xs.size(); ++i)
            if (xs[i].first == xs[i - 1].first)
                rep.violations.push_back("points " + std::to_string(xs[i - 1].second) + " and " +
                                         std::to_string(xs[i].second) + " share x-coordinate");
    }

    // Reference line strictly left of every point and every pairwise crossing.
    Rational xref = 0;
    bool have = false;
    auto consider = [&](const Rational& x) {
        if (!have || x < xref) { xref = x; have = true; }
    };
    for (const auto& p : sys.points) consider(p.x);
    for (size_t i = 0; i < sys.lines.size(); ++i)
        for (size_t j = i + 1; j < sys.lines.size(); ++j) {
            if (sys.lines[i] == sys.lines[j])
                rep.violations.push_back("duplicate lines " + std::to_string(i) + "," +
                                         std::to_string(j));
            if (auto q = line_intersect(sys.lines[i], sys.lines[j])) consider(q->x);
        }
    xref = xref - 1;

    std::vector<std::pair<Rational, int>> order;
    for (size_t i = 0; i < sys.lines.size(); ++i)
        order.emplace_back(sys.lines[i].y_at(xref), static_cast<int>(i));
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;  // topmost first
        return a.second < b.second;
    });
    for (size_t i = 1; i < order.size(); ++i)
        if (order[i].first == order[i - 1].first)
            rep.violations.push_back("lines " + std::to_string(order[i - 1].second) + " and " +
                                     std::to_string(order[i].second) +
                                     " meet on the reference line");
    for (const auto& [y, idx] : order) rep.line_order.push_back(idx);
    rep.ok = rep.violations.empty();
    return rep;
}

}  // namespace tanglab
