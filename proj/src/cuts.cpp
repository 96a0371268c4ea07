#include "twr/cuts.h"

#include "caches.h"
#include "twr/visibility.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace twr {

std::optional<std::pair<Point, BoundaryPos>> ray_shoot(const SimplePolygon& P, const Point& from, const Point& d,
                                                       double tol) {
    const std::size_t n = P.size();
    const double dl = norm(d);
    if (dl == 0.0) return std::nullopt;
    double best = std::numeric_limits<double>::infinity();
    std::optional<std::pair<Point, BoundaryPos>> out;
    auto take = [&](double t, std::size_t edge, double s) {
        if (t * dl <= tol || t >= best) return;
        Segment E = P.edge(edge);
        double el = E.length();
        BoundaryPos bp{edge, std::clamp(s, 0.0, 1.0)};
        Point x = from + d * t;
        if (s * el <= tol) {
            bp = {edge, 0.0};
            x = E.a;
        } else if ((1.0 - s) * el <= tol) {
            bp = {P.next(edge), 0.0};
            x = E.b;
        }
        best = t;
        out = std::make_pair(x, bp);
    };
    for (std::size_t i = 0; i < n; ++i) {
        Segment E = P.edge(i);
        Point e = E.b - E.a;
        double el = norm(e);
        double den = cross(d, e);
        if (std::abs(den) <= 1e-14 * dl * el) {
            if (std::abs(cross(E.a - from, d)) <= tol * dl) {
                take(dot(E.a - from, d) / (dl * dl), i, 0.0);
                take(dot(E.b - from, d) / (dl * dl), i, 1.0);
            }
            continue;
        }
        double t = cross(E.a - from, e) / den;
        double s = cross(E.a - from, d) / den;
        double st = tol / el;
        if (s < -st || s > 1.0 + st) continue;
        take(t, i, s);
    }
    return out;
}

const std::vector<Extension>& extensions(const SimplePolygon& P) {
    auto& c = P.caches();
    std::call_once(c.ext_once, [&] {
        for (std::size_t i : P.reflex_indices()) {
            const Point& v = P.vertex(i);
            const Point& u = P.vertex(P.prev(i));
            const Point& w = P.vertex(P.next(i));
            BoundaryPos vp{i, 0.0};
            if (auto hit = ray_shoot(P, v, v - u, P.tol()))
                c.ext.push_back({Cut{v, hit->first, vp, hit->second}, P.prev(i), i});
            if (auto hit = ray_shoot(P, v, v - w, P.tol()))
                c.ext.push_back({Cut{hit->first, v, hit->second, vp}, i, i});
        }
    });
    return c.ext;
}

Cut make_cut(const SimplePolygon& P, const Point& a, const Point& b) {
    const double tol = P.tol();
    auto pa = P.boundary_pos(a, tol);
    auto pb = P.boundary_pos(b, tol);
    if (!pa || !pb) throw InvalidCut("cut endpoints must lie on the boundary");
    if (dist(a, b) <= tol) throw InvalidCut("cut has zero length");
    Point m = lerp(a, b, 0.5);
    if (locate(P, m, tol) != Location::Inside || !sees(P, a, b, tol))
        throw InvalidCut("cut interior leaves the polygon");
    return {a, b, *pa, *pb};
}

Region left_polygon(const SimplePolygon& P, const Cut& c) {
    const double tol = P.tol();
    Cut cc = make_cut(P, c.start, c.end);
    const double L = P.perimeter();
    double s_end = P.arc_of(cc.end_pos);
    double s_start = P.arc_of(cc.start_pos);
    double span = std::fmod(s_start - s_end + 2 * L, L);
    // boundary vertices met walking CCW from the end point back to the start
    Region R;
    std::vector<Point> ordered{cc.start, cc.end};
    std::vector<std::pair<double, Point>> tail;
    for (std::size_t k = 0; k < P.size(); ++k) {
        double off = std::fmod(P.arc_of({k, 0.0}) - s_end + 2 * L, L);
        if (off > tol && off < span - tol) tail.push_back({off, P.vertex(k)});
    }
    std::sort(tail.begin(), tail.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& t : tail) ordered.push_back(t.second);
    R.vertices = ordered;
    return R;
}

const char* to_string(CoverRelation r) {
    switch (r) {
        case CoverRelation::None: return "none";
        case CoverRelation::Reflects: return "reflects";
        case CoverRelation::Crosses: return "crosses";
        case CoverRelation::ProperlyCoversWithoutTouching: return "properly_covers_without_touching";
    }
    return "none";
}

CoverRelation cover_relation(const SimplePolygon& P, const std::vector<Point>& G, const Cut& c) {
    if (G.empty()) return CoverRelation::None;
    const double tol = P.tol();
    Region L = left_polygon(P, c);
    Segment cs = c.segment();
    auto strictly_left = [&](const Point& x) {
        return point_segment_distance(x, cs) > tol && L.contains(x, tol);
    };
    bool touches = false, proper = false;
    if (G.size() == 1) {
        touches = point_segment_distance(G[0], cs) <= tol;
        proper = strictly_left(G[0]);
    }
    for (std::size_t i = 0; i + 1 < G.size(); ++i) {
        Segment g{G[i], G[i + 1]};
        std::vector<double> ts{0.0, 1.0};
        if (segments_intersect(g, cs, tol)) {
            touches = true;
            if (auto x = line_intersection(g.a, g.b, cs.a, cs.b)) {
                Point dg = g.b - g.a;
                double l2 = dot(dg, dg);
                if (l2 > 0) ts.push_back(std::clamp(dot(*x - g.a, dg) / l2, 0.0, 1.0));
            }
            for (const Point& e : {cs.a, cs.b}) ts.push_back(project_param(g, e));
        }
        std::sort(ts.begin(), ts.end());
        for (std::size_t k = 0; k < ts.size() && !proper; ++k) {
            if (strictly_left(g.at(ts[k]))) proper = true;
            if (k + 1 < ts.size() && strictly_left(g.at(0.5 * (ts[k] + ts[k + 1])))) proper = true;
        }
    }
    if (proper) return touches ? CoverRelation::Crosses : CoverRelation::ProperlyCoversWithoutTouching;
    return touches ? CoverRelation::Reflects : CoverRelation::None;
}

}  // namespace twr
