#pragma once

#include "twr/geom_core.h"

namespace twr {

struct InvalidCut : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Directed chord of P.
struct Cut {
    Point start;
    Point end;
    BoundaryPos start_pos;
    BoundaryPos end_pos;
    Segment segment() const { return {start, end}; }
    Cut reversed() const { return {end, start, end_pos, start_pos}; }
};

struct Extension {
    Cut cut;
    std::size_t source_edge = 0;
    std::size_t reflex_vertex = 0;   /// vertex index
};

/// Both incident-edge extensions of every reflex vertex, ordered by vertex then edge. Cached.
const std::vector<Extension>& extensions(const SimplePolygon& P);

/// First boundary contact of the ray from `from` (a point of P) in direction d, skipping
/// contacts within tol of `from`.
std::optional<std::pair<Point, BoundaryPos>> ray_shoot(const SimplePolygon& P, const Point& from,
                                                       const Point& d, double tol);

/// Closed part of P on the left of c.
Region left_polygon(const SimplePolygon& P, const Cut& c);
/// Builds a cut from two boundary points; throws InvalidCut.
Cut make_cut(const SimplePolygon& P, const Point& a, const Point& b);

enum class CoverRelation { None, Reflects, Crosses, ProperlyCoversWithoutTouching };
const char* to_string(CoverRelation r);

/// G is a polyline (a single point is allowed). Closed tours repeat their first point.
CoverRelation cover_relation(const SimplePolygon& P, const std::vector<Point>& G, const Cut& c);
inline bool covers(CoverRelation r) { return r != CoverRelation::None; }

}  // namespace twr
