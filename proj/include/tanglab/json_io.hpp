#pragma once

#include "tanglab/curves.hpp"
#include "tanglab/incidence.hpp"
#include "tanglab/patterns.hpp"
#include "tanglab/verifier.hpp"

#include <string>

namespace tanglab {

// Wire formats use "num/den" strings for every rational.

std::string to_json(const PointLineSystem& sys);
PointLineSystem point_line_system_from_json(const std::string& text);

std::string to_json(const CurveFamily& family);
CurveFamily curve_family_from_json(const std::string& text);

std::string to_json(const TangencyReport& report);

std::string to_json(const EdgeOrderedGraph& g);
EdgeOrderedGraph edge_ordered_graph_from_json(const std::string& text);

std::string to_json(const ZeroOneMatrix& m);
ZeroOneMatrix zero_one_matrix_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace tanglab
