#pragma once

#include "twr/solver.h"

#include <cstdint>
#include <string>

namespace twr {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// {"vertices": [[x,y], ...]}
std::vector<Point> parse_polygon_json(const std::string& text);
std::string polygon_to_json(const std::vector<Point>& vertices);
std::string solution_to_json(const TwoWatchmanSolution& s);

struct SvgLayers {
    bool extensions = true;
    bool tentacles = true;
    bool tours = true;
    std::vector<VisibilityPolygon> overlays;
};
std::string render_svg(const SimplePolygon& P, const TwoWatchmanSolution* s, const SvgLayers& layers = {});

/// Test polygons. family: comb (n teeth), spiral (n turns), staircase (n steps), random (n vertices).
std::vector<Point> generate_corpus(const std::string& family, std::size_t n, std::uint64_t seed);

struct NamedPolygon {
    std::string name;
    std::vector<Point> vertices;
};
/// Fixed twelve-polygon set used by the acceptance run.
std::vector<NamedPolygon> standard_corpus();

}  // namespace twr
