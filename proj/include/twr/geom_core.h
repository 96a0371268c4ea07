#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace twr {

struct Point {
    double x = 0.0;
    double y = 0.0;

    Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
    Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
    Point operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Point& o) const { return !(*this == o); }
};

inline bool lex_less(const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}
inline double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point& a) { return std::sqrt(a.x * a.x + a.y * a.y); }
inline double dist(const Point& a, const Point& b) { return norm(a - b); }
inline Point lerp(const Point& a, const Point& b, double t) { return a + (b - a) * t; }

struct Segment {
    Point a;
    Point b;
    double length() const { return dist(a, b); }
    Point at(double t) const { return lerp(a, b, t); }
};

/// Exact sign of the turn a->b->c: +1 left, 0 collinear, -1 right.
int orient(const Point& a, const Point& b, const Point& c);

/// Sidedness with an absolute distance tolerance; tol <= 0 falls back to orient.
int side(const Point& a, const Point& b, const Point& c, double tol);

/// Parameter of the closest point of segment s to p, clamped to [0,1].
double project_param(const Segment& s, const Point& p);
double point_segment_distance(const Point& p, const Segment& s);

/// Closed segment intersection test. tol <= 0 is exact.
bool segments_intersect(const Segment& s, const Segment& t, double tol = 0.0);
/// Interiors cross at a single point, no endpoint touching.
bool segments_cross_properly(const Segment& s, const Segment& t, double tol = 0.0);
/// Intersection point of the supporting lines, if not parallel.
std::optional<Point> line_intersection(const Point& a, const Point& b, const Point& c, const Point& d);

double signed_area(const std::vector<Point>& pts);

enum class PolygonErrorKind {
    TooFewVertices,
    NonFinite,
    DuplicateVertex,
    CollinearTriple,
    SelfIntersecting,
};

const char* to_string(PolygonErrorKind k);

struct PolygonError : std::runtime_error {
    PolygonErrorKind kind;
    PolygonError(PolygonErrorKind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

/// Thrown when a query point lies outside P.
struct PointOutsidePolygon : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class PolygonWarning { ClockwiseFixedUp };

/// Position on the boundary: edge index and parameter along it.
struct BoundaryPos {
    std::size_t edge = 0;
    double t = 0.0;
};

namespace detail {
struct Caches;
}

class SimplePolygon {
public:
    SimplePolygon() = default;

    const std::vector<Point>& vertices() const { return v_; }
    std::size_t size() const { return v_.size(); }
    const Point& vertex(std::size_t i) const { return v_[i % v_.size()]; }
    std::size_t next(std::size_t i) const { return (i + 1) % v_.size(); }
    std::size_t prev(std::size_t i) const { return (i + v_.size() - 1) % v_.size(); }
    /// Edge i runs from vertex i to vertex i+1.
    Segment edge(std::size_t i) const { return {vertex(i), vertex(next(i))}; }

    bool is_reflex(std::size_t i) const { return reflex_[i]; }
    const std::vector<bool>& reflex_flags() const { return reflex_; }
    const std::vector<std::size_t>& reflex_indices() const { return reflex_idx_; }

    /// Geometric tolerance used for constructed points.
    double tol() const { return tol_; }
    double diameter() const { return diam_; }
    double area() const { return area_; }
    double perimeter() const { return cum_.back(); }

    Point point_at(const BoundaryPos& bp) const { return edge(bp.edge).at(bp.t); }
    /// Arc-length coordinate of a boundary position, measured from vertex 0.
    double arc_of(const BoundaryPos& bp) const;
    BoundaryPos pos_at_arc(double s) const;
    /// Boundary position of p if p lies on the boundary within tol.
    std::optional<BoundaryPos> boundary_pos(const Point& p, double tol) const;
    /// Index of a vertex within tol of p.
    std::optional<std::size_t> vertex_at(const Point& p, double tol) const;

    bool operator==(const SimplePolygon& o) const { return v_ == o.v_; }

    detail::Caches& caches() const { return *caches_; }

private:
    friend SimplePolygon validate_polygon(const std::vector<Point>&, std::vector<PolygonWarning>*);
    std::vector<Point> v_;
    std::vector<bool> reflex_;
    std::vector<std::size_t> reflex_idx_;
    std::vector<double> cum_;
    double tol_ = 0.0;
    double diam_ = 0.0;
    double area_ = 0.0;
    std::shared_ptr<detail::Caches> caches_;
};

/// Checks simplicity and general position, reverses clockwise input.
SimplePolygon validate_polygon(const std::vector<Point>& raw,
                               std::vector<PolygonWarning>* warnings = nullptr);

enum class Location { Inside, Boundary, Outside };

/// Point location; tol <= 0 is exact.
Location locate(const SimplePolygon& P, const Point& p, double tol = 0.0);
inline bool contains(const SimplePolygon& P, const Point& p, double tol = 0.0) {
    return locate(P, p, tol) != Location::Outside;
}

struct Triangulation {
    std::vector<std::array<std::size_t, 3>> triangles;
    /// Neighbor across the edge opposite to corner k, or -1.
    std::vector<std::array<long, 3>> adjacency;
};

/// Ear-clipping triangulation, cached per polygon.
const Triangulation& triangulate(const SimplePolygon& P);

/// A subset of P stored as a polygon that may carry collinear vertices.
struct Region {
    std::vector<Point> vertices;

    bool empty() const { return vertices.empty(); }
    double area() const { return vertices.size() < 3 ? 0.0 : std::abs(signed_area(vertices)); }
    Point centroid() const;
    bool contains(const Point& p, double tol) const;
};

/// Points that see all of P; an empty region when P is not star-shaped.
Region kernel(const SimplePolygon& P);

/// Uniform samples by arc length.
std::vector<Point> sample_boundary(const SimplePolygon& P, std::size_t n, std::mt19937_64& rng);
/// Uniform samples by area, drawn through the triangulation.
std::vector<Point> sample_interior(const SimplePolygon& P, std::size_t n, std::mt19937_64& rng);

}  // namespace twr
