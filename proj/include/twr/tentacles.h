#pragma once

#include "twr/cuts.h"
#include "twr/geodesics.h"
#include "twr/visibility.h"

#include <array>
#include <string>

namespace twr {

struct TargetNotOnEdge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class TipKind { Free, OnBoundary, AtAnchor };

struct Tentacle {
    Point head;
    Point target;
    std::size_t target_edge = 0;
    GeodesicPath path;                       /// head -> tip
    Point tip;
    std::optional<std::size_t> hiding_vertex;
    std::optional<Cut> cut;                  /// directed with the head on its right
    TipKind tip_kind = TipKind::Free;
    /// window anchor vertex, and the edge holding the tip when it lies on the boundary
    std::optional<std::size_t> anchor;
    std::optional<std::size_t> tip_edge;

    double length() const { return path.length; }
    bool zero() const { return path.waypoints.size() < 2 || path.length == 0.0; }
    std::optional<Point> hiding_point(const SimplePolygon& P) const {
        if (!hiding_vertex) return std::nullopt;
        return P.vertex(*hiding_vertex);
    }
};

/// Shortest path from q to a point seeing r. r must be on the boundary.
Tentacle tentacle(const SimplePolygon& P, const Point& q, const Point& r);
/// Pipeline variant without the input checks; b is the edge holding r.
Tentacle tentacle_on_edge(const SimplePolygon& P, const Point& q, const Point& r, std::size_t b);
Tentacle tentacle_on_edge(const SimplePolygon& P, const SourceField& q, const Point& r, std::size_t b);

/// Limit of tentacle(q, x) as x runs to r inside edge b.
Tentacle edge_restricted_tentacle(const SimplePolygon& P, const Point& q, const Point& r, std::size_t b);

/// Target region of the edge-restricted tentacle at vertex v of edge b: VP(v) cut by the
/// closed left half-plane of b. Cached per (v, b).
struct RestrictedRegion {
    std::size_t vertex = 0;
    std::size_t edge = 0;
    std::vector<Cut> chords;    /// head side on the right
    std::vector<std::size_t> chord_anchor;
    bool contains(const SimplePolygon& P, const Point& x) const;
};
const RestrictedRegion& restricted_region(const SimplePolygon& P, std::size_t v, std::size_t b);
/// Edge-restricted tentacle at an edge endpoint through the cached region.
Tentacle vertex_tentacle(const SimplePolygon& P, const SourceField& q, std::size_t v, std::size_t b);

// ---- motion of a tentacle under head and target displacement ----

enum class MotionFamily { A, B, C, D, E, F };
const char* to_string(MotionFamily f);

struct WrongCase : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Geometry the coefficients are read from. The head moves along unit ds, the target along unit db.
struct MotionAnchors {
    Point q, r, p, u, u1, uh;
    Point ds{1, 0};
    Point db{1, 0};
    Point dp{1, 0};     /// unit direction of the boundary edge holding the tip
    bool single_segment = true;
    TipKind tip = TipKind::Free;
    bool zero = false;
    /// angle between u - p and dp, used by the A family
    double phi = 0.0;
    /// eps' = a eps / (1 - c eps)
    double a = 0.0, c = 0.0;
};

struct MotionCoeffs {
    MotionFamily family = MotionFamily::F;
    std::vector<double> k;
    MotionAnchors anchors;
};

/// Tip displacement along its edge for a target displacement eps.
double eps_prime(double a, double c, double eps);

MotionAnchors motion_anchors(const SimplePolygon& P, const Tentacle& t, const Point& ds);
MotionCoeffs coeffs_A(const MotionAnchors& m);
MotionCoeffs coeffs_B(const MotionAnchors& m);
MotionCoeffs coeffs_C(const MotionAnchors& m);
MotionCoeffs coeffs_D(const MotionAnchors& m);
MotionCoeffs coeffs_E(const MotionAnchors& m);
/// Combined 24-coefficient family for the configuration.
MotionCoeffs motion_coeffs(const MotionAnchors& m);

/// Length change F(delta, eps). Works for every family tag.
double evaluate_motion(const MotionCoeffs& c, double delta, double eps);
/// Analytic partials (dF/d delta, dF/d eps).
std::array<double, 2> motion_gradient(const MotionCoeffs& c, double delta, double eps);

// ---- event points ----

struct EventPoint {
    double t = 0.0;
    int type = 0;
    std::string description;
};

/// Either the head moves on s with the target fixed, or the target moves on edge b with the head fixed.
struct Sweep {
    enum Kind { HeadOnSegment, TargetOnEdge } kind = TargetOnEdge;
    Segment s;
    std::size_t edge = 0;
    Point fixed;
    /// optional rival head; its length crossover gives type-5 events
    std::optional<Point> rival;
    std::size_t grid = 1024;
};

std::vector<EventPoint> event_points(const SimplePolygon& P, const Sweep& sw);

}  // namespace twr
