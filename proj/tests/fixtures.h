#pragma once

#include "twr/io.h"

#include <cmath>
#include <random>

namespace fx {

using twr::Point;
using twr::SimplePolygon;

inline std::vector<Point> square() { return {{0, 0}, {1, 0}, {1, 1}, {0, 1}}; }
inline SimplePolygon sq() { return twr::validate_polygon(square()); }
inline SimplePolygon lshape() { return twr::validate_polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}); }
inline SimplePolygon comb(std::size_t k) { return twr::validate_polygon(twr::generate_corpus("comb", k, 1)); }
inline SimplePolygon corpus(const std::string& name) {
    for (const auto& np : twr::standard_corpus())
        if (np.name == name) return twr::validate_polygon(np.vertices);
    throw std::invalid_argument(name);
}

/// Uniform point of P by rejection from the bounding box.
inline Point random_inside(const SimplePolygon& P, std::mt19937_64& rng) {
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (const auto& v : P.vertices()) {
        x0 = std::min(x0, v.x), y0 = std::min(y0, v.y);
        x1 = std::max(x1, v.x), y1 = std::max(y1, v.y);
    }
    std::uniform_real_distribution<double> X(x0, x1), Y(y0, y1);
    for (;;) {
        Point p{X(rng), Y(rng)};
        if (twr::locate(P, p) == twr::Location::Inside) return p;
    }
}

}  // namespace fx
