#pragma once

#include "twr/geom_core.h"

#include <functional>
#include <variant>

namespace twr {

struct EmptyTarget : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Start, interior reflex vertices, end.
struct GeodesicPath {
    std::vector<Point> waypoints;
    double length = 0.0;
    /// polygon vertex index of each interior waypoint
    std::vector<std::size_t> vertex_ids;
};

double path_length(const std::vector<Point>& pts);

/// All-pairs geodesics between reflex vertices, cached per polygon.
class GeodesicIndex {
public:
    GeodesicIndex() = default;
    explicit GeodesicIndex(const SimplePolygon& P);

    const std::vector<std::size_t>& nodes() const { return nodes_; }
    double dist(std::size_t i, std::size_t j) const { return d_[i * nodes_.size() + j]; }
    /// Node indices from i to j inclusive.
    std::vector<std::size_t> node_path(std::size_t i, std::size_t j) const;

private:
    std::vector<std::size_t> nodes_;
    std::vector<double> d_;
    std::vector<long> next_;
};

const GeodesicIndex& geodesic_index(const SimplePolygon& P);

/// Source of a geodesic: a point (a == b) or a segment.
struct Source {
    Point a;
    Point b;
    static Source point(const Point& p) { return {p, p}; }
    static Source segment(const Segment& s) { return {s.a, s.b}; }
    bool is_point() const { return a == b; }
};

/// A target region given by its chords plus a membership test.
struct ChordTarget {
    std::vector<Segment> chords;
    std::function<bool(const Point&)> contains;
};

/// Geodesic distances from one source to every reflex node.
class SourceField {
public:
    SourceField(const SimplePolygon& P, const Source& src);

    const Source& source() const { return src_; }
    /// Shortest path to a point.
    GeodesicPath to_point(const Point& z) const;
    double dist_to_point(const Point& z) const;
    /// Shortest path to the closed segment t. Ties keep the smallest parameter on t.
    GeodesicPath to_segment(const Segment& t) const;
    double dist_to_segment(const Segment& t) const;
    /// Shortest path into a region; zero-length when the source meets it.
    GeodesicPath to_region(const ChordTarget& T) const;

private:
    const SimplePolygon* P_;
    const GeodesicIndex* G_;
    Source src_;
    std::vector<double> d_;
    std::vector<long> first_;
    std::vector<Point> attach_;
};

GeodesicPath shortest_path(const SimplePolygon& P, const Point& x, const Point& y);
GeodesicPath shortest_path(const SimplePolygon& P, const Point& x, const Segment& y);
GeodesicPath shortest_path(const SimplePolygon& P, const Segment& x, const Point& y);
GeodesicPath shortest_path(const SimplePolygon& P, const Segment& x, const Segment& y);
/// Throws EmptyTarget when the region is empty.
GeodesicPath shortest_path(const SimplePolygon& P, const Point& x, const Region& y);

struct ShortestPathTree {
    Point root;
    /// parent[i] for vertex i: another vertex, or -1 for the root, or -2 when unreachable
    std::vector<long> parent;
    std::vector<double> dist;
    /// extension of each tree edge beyond its child vertex to the boundary, empty segment if none
    std::vector<std::optional<Segment>> augmentation;
    std::vector<int> depth;
    std::vector<std::vector<long>> up;  /// binary lifting table, -1 means root
};

ShortestPathTree build_spt(const SimplePolygon& P, const Point& root);
/// Lowest common ancestor of two vertices; -1 stands for the root.
long lca(const ShortestPathTree& T, std::size_t a, std::size_t b);
/// Vertex indices from the root (exclusive) down to i (inclusive).
std::vector<std::size_t> tree_path(const ShortestPathTree& T, std::size_t i);

}  // namespace twr
