#pragma once

#include "twr/geom_core.h"

#include <utility>
#include <vector>

namespace twr {

struct SegmentOutsidePolygon : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A window of a point visibility polygon. seg is directed so the hidden pocket lies on its right.
struct Window {
    Segment seg;
    std::size_t anchor = 0;      /// reflex vertex the window starts at
    bool anchor_first = true;    /// seg.a is the anchor
    BoundaryPos far_pos;         /// where the window meets the boundary
    Point anchor_point() const { return anchor_first ? seg.a : seg.b; }
    Point far_point() const { return anchor_first ? seg.b : seg.a; }
};

struct VisibilityPolygon {
    Region region;
    std::vector<Window> windows;
    std::vector<Point> source;   /// one point, or the two ends of a segment
    /// Visible boundary pieces as arc-length intervals [s0, s1], s1 may run past the perimeter.
    std::vector<std::pair<double, double>> visible_arcs;
};

/// Closed visibility, exact. Throws PointOutsidePolygon.
bool sees(const SimplePolygon& P, const Point& p, const Point& q);
/// Same test with a distance tolerance for constructed points; no containment check.
bool sees(const SimplePolygon& P, const Point& p, const Point& q, double tol);
/// Does x see at least one point of s.
bool sees_segment(const SimplePolygon& P, const Point& x, const Segment& s, double tol);

VisibilityPolygon visibility_from_point(const SimplePolygon& P, const Point& p);
/// Variant used by the pipeline on constructed points; tolerance P.tol().
VisibilityPolygon visibility_from_point_tol(const SimplePolygon& P, const Point& p);
/// Cached visibility polygon of vertex i.
const VisibilityPolygon& vertex_visibility(const SimplePolygon& P, std::size_t i);

/// Points seeing some point of s. Windows are not reported for a proper segment.
VisibilityPolygon weak_visibility_from_segment(const SimplePolygon& P, const Segment& s);

/// Is the boundary point at arc coordinate s inside one of the visible arcs.
bool arc_visible(const SimplePolygon& P, const VisibilityPolygon& vp, double s, double tol);

}  // namespace twr
