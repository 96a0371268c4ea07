#pragma once

#include "twr/jellyfish.h"

namespace twr {

struct EmptyInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateTour : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ChainType { Convex, Reflex };

struct Chain {
    ChainType type = ChainType::Convex;
    std::size_t first = 0;   /// waypoint span, cyclic, inclusive
    std::size_t last = 0;
};

/// Closed tour. A point tour has one waypoint; a back-and-forth tour lists its path once
/// with `back_and_forth` set and counts the length twice.
struct Tour {
    std::vector<Point> waypoints;
    double length = 0.0;
    bool back_and_forth = false;
    std::vector<Chain> chains;

    bool is_point() const { return waypoints.size() == 1; }
    bool degenerate() const { return waypoints.size() < 3 || back_and_forth; }
    /// Waypoints as a closed polyline that repeats its start.
    std::vector<Point> closed_polyline() const;
};

Tour point_tour(const Point& p);
/// Out-and-back along a path.
Tour path_tour(const std::vector<Point>& path);
/// Tour from a closed cycle, normalized (CCW, starting at the smallest waypoint).
Tour cycle_tour(const SimplePolygon& P, std::vector<Point> cycle);

/// Shortest closed curve in P enclosing all points of the objects (polylines inside P).
Tour relative_convex_hull(const SimplePolygon& P, const std::vector<std::vector<Point>>& objects);
Tour relative_convex_hull(const SimplePolygon& P, const std::vector<Point>& points);

/// Hull of the head together with all tentacle paths.
Tour tour_from_jellyfish(const SimplePolygon& P, const Jellyfish& jf);

/// Maximal convex and reflex chains. Throws DegenerateTour for point and segment tours.
std::vector<Chain> classify_chains(const SimplePolygon& P, const Tour& t);

/// Is p enclosed by (or on) the closed tour.
bool tour_contains(const SimplePolygon& P, const Tour& t, const Point& p);

}  // namespace twr
