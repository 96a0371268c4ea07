#include "twr/geom_core.h"

#include "caches.h"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace twr {

namespace {

/// Static filter bound for the double-precision determinant.
constexpr double kOrientBound = (3.0 + 16.0 * 0x1p-53) * 0x1p-53;

int orient_exact(const Point& a, const Point& b, const Point& c) {
    mpq_class ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
    mpq_class det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx);
    return sgn(det);
}

}  // namespace

int orient(const Point& a, const Point& b, const Point& c) {
    double detl = (a.x - c.x) * (b.y - c.y);
    double detr = (a.y - c.y) * (b.x - c.x);
    double det = detl - detr;
    double bound = kOrientBound * (std::abs(detl) + std::abs(detr));
    if (det > bound) return 1;
    if (-det > bound) return -1;
    if (detl == 0.0 && detr == 0.0) return 0;
    return orient_exact(a, b, c);
}

int side(const Point& a, const Point& b, const Point& c, double tol) {
    if (tol <= 0.0) return orient(a, b, c);
    Point d = b - a;
    double l2 = dot(d, d);
    if (l2 <= tol * tol) return 0;
    double cr = cross(d, c - a);
    if (cr * cr <= tol * tol * l2) return 0;
    return cr > 0 ? 1 : -1;
}

double project_param(const Segment& s, const Point& p) {
    Point d = s.b - s.a;
    double l2 = dot(d, d);
    if (l2 == 0.0) return 0.0;
    return std::clamp(dot(p - s.a, d) / l2, 0.0, 1.0);
}

double point_segment_distance(const Point& p, const Segment& s) {
    return dist(p, s.at(project_param(s, p)));
}

namespace {

/// c on the closed segment [a,b], given that it is collinear with it.
bool within_box(const Point& a, const Point& b, const Point& c, double tol) {
    return c.x >= std::min(a.x, b.x) - tol && c.x <= std::max(a.x, b.x) + tol &&
           c.y >= std::min(a.y, b.y) - tol && c.y <= std::max(a.y, b.y) + tol;
}

bool on_segment(const Segment& s, const Point& p, double tol) {
    if (tol > 0.0) return point_segment_distance(p, s) <= tol;
    return orient(s.a, s.b, p) == 0 && within_box(s.a, s.b, p, 0.0);
}

}  // namespace

bool segments_intersect(const Segment& s, const Segment& t, double tol) {
    int o1 = side(s.a, s.b, t.a, tol);
    int o2 = side(s.a, s.b, t.b, tol);
    int o3 = side(t.a, t.b, s.a, tol);
    int o4 = side(t.a, t.b, s.b, tol);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return on_segment(s, t.a, tol) || on_segment(s, t.b, tol) || on_segment(t, s.a, tol) ||
           on_segment(t, s.b, tol);
}

bool segments_cross_properly(const Segment& s, const Segment& t, double tol) {
    if (std::max(s.a.x, s.b.x) < std::min(t.a.x, t.b.x) || std::max(t.a.x, t.b.x) < std::min(s.a.x, s.b.x) ||
        std::max(s.a.y, s.b.y) < std::min(t.a.y, t.b.y) || std::max(t.a.y, t.b.y) < std::min(s.a.y, s.b.y))
        return false;
    int o1 = side(s.a, s.b, t.a, tol);
    int o2 = side(s.a, s.b, t.b, tol);
    int o3 = side(t.a, t.b, s.a, tol);
    int o4 = side(t.a, t.b, s.b, tol);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

std::optional<Point> line_intersection(const Point& a, const Point& b, const Point& c, const Point& d) {
    Point r = b - a;
    Point s = d - c;
    double den = cross(r, s);
    if (den == 0.0) return std::nullopt;
    double t = cross(c - a, s) / den;
    return a + r * t;
}

double signed_area(const std::vector<Point>& pts) {
    double s = 0.0;
    for (std::size_t i = 0, n = pts.size(); i < n; ++i) s += cross(pts[i], pts[(i + 1) % n]);
    return 0.5 * s;
}

const char* to_string(PolygonErrorKind k) {
    switch (k) {
        case PolygonErrorKind::TooFewVertices: return "TooFewVertices";
        case PolygonErrorKind::NonFinite: return "NonFinite";
        case PolygonErrorKind::DuplicateVertex: return "DuplicateVertex";
        case PolygonErrorKind::CollinearTriple: return "CollinearTriple";
        case PolygonErrorKind::SelfIntersecting: return "SelfIntersecting";
    }
    return "Unknown";
}

SimplePolygon validate_polygon(const std::vector<Point>& raw, std::vector<PolygonWarning>* warnings) {
    const std::size_t n = raw.size();
    if (n < 3) throw PolygonError(PolygonErrorKind::TooFewVertices, "polygon needs at least 3 vertices");
    for (const auto& p : raw)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw PolygonError(PolygonErrorKind::NonFinite, "non-finite coordinate");
    std::vector<Point> sorted = raw;
    std::sort(sorted.begin(), sorted.end(), lex_less);
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw PolygonError(PolygonErrorKind::DuplicateVertex, "repeated vertex");
    for (std::size_t i = 0; i < n; ++i)
        if (orient(raw[(i + n - 1) % n], raw[i], raw[(i + 1) % n]) == 0)
            throw PolygonError(PolygonErrorKind::CollinearTriple,
                               "three consecutive collinear vertices at index " + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i) {
        Segment si{raw[i], raw[(i + 1) % n]};
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            Segment sj{raw[j], raw[(j + 1) % n]};
            if (segments_intersect(si, sj))
                throw PolygonError(PolygonErrorKind::SelfIntersecting,
                                   "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
        }
    }
    SimplePolygon P;
    P.v_ = raw;
    double a = signed_area(P.v_);
    if (a < 0) {
        std::reverse(P.v_.begin(), P.v_.end());
        // keep the original first vertex in front
        std::rotate(P.v_.begin(), P.v_.end() - 1, P.v_.end());
        if (warnings) warnings->push_back(PolygonWarning::ClockwiseFixedUp);
        a = -a;
    }
    P.area_ = a;
    P.reflex_.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        P.reflex_[i] = orient(P.v_[(i + n - 1) % n], P.v_[i], P.v_[(i + 1) % n]) < 0;
        if (P.reflex_[i]) P.reflex_idx_.push_back(i);
    }
    P.cum_.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) P.cum_[i + 1] = P.cum_[i] + dist(P.v_[i], P.v_[(i + 1) % n]);
    double minx = sorted.front().x, maxx = sorted.back().x;
    double miny = std::numeric_limits<double>::infinity(), maxy = -miny;
    for (const auto& p : raw) {
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
    P.diam_ = std::hypot(maxx - minx, maxy - miny);
    P.tol_ = 1e-10 * std::max(1.0, P.diam_);
    P.caches_ = std::make_shared<detail::Caches>();
    return P;
}

double SimplePolygon::arc_of(const BoundaryPos& bp) const {
    return cum_[bp.edge] + bp.t * (cum_[bp.edge + 1] - cum_[bp.edge]);
}

BoundaryPos SimplePolygon::pos_at_arc(double s) const {
    double L = perimeter();
    s = std::fmod(s, L);
    if (s < 0) s += L;
    auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    std::size_t e = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - cum_.begin() - 1, 0), size() - 1);
    double len = cum_[e + 1] - cum_[e];
    return {e, len > 0 ? std::clamp((s - cum_[e]) / len, 0.0, 1.0) : 0.0};
}

std::optional<std::size_t> SimplePolygon::vertex_at(const Point& p, double tol) const {
    for (std::size_t i = 0; i < v_.size(); ++i)
        if (tol > 0 ? dist(v_[i], p) <= tol : v_[i] == p) return i;
    return std::nullopt;
}

std::optional<BoundaryPos> SimplePolygon::boundary_pos(const Point& p, double tol) const {
    if (auto vi = vertex_at(p, tol)) return BoundaryPos{*vi, 0.0};
    double best = std::numeric_limits<double>::infinity();
    std::optional<BoundaryPos> out;
    for (std::size_t i = 0; i < v_.size(); ++i) {
        Segment e = edge(i);
        bool hit = tol > 0 ? point_segment_distance(p, e) <= tol : on_segment(e, p, 0.0);
        if (!hit) continue;
        double t = project_param(e, p);
        double d = dist(e.at(t), p);
        if (d < best) {
            best = d;
            out = BoundaryPos{i, t};
        }
    }
    return out;
}

Location locate(const SimplePolygon& P, const Point& p, double tol) {
    const std::size_t n = P.size();
    for (std::size_t i = 0; i < n; ++i)
        if (on_segment(P.edge(i), p, tol)) return Location::Boundary;
    // winding number with exact orientation tests
    int wn = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = P.vertex(i);
        const Point& b = P.vertex(i + 1);
        if (a.y <= p.y) {
            if (b.y > p.y && orient(a, b, p) > 0) ++wn;
        } else if (b.y <= p.y && orient(a, b, p) < 0) {
            --wn;
        }
    }
    return wn != 0 ? Location::Inside : Location::Outside;
}

namespace {

Triangulation ear_clip(const SimplePolygon& P) {
    Triangulation T;
    std::vector<std::size_t> idx(P.size());
    std::iota(idx.begin(), idx.end(), 0);
    auto blocked = [&](std::size_t ia, std::size_t ib, std::size_t ic) {
        const Point &a = P.vertex(ia), &b = P.vertex(ib), &c = P.vertex(ic);
        for (std::size_t k : idx) {
            if (k == ia || k == ib || k == ic) continue;
            const Point& p = P.vertex(k);
            if (orient(a, b, p) >= 0 && orient(b, c, p) >= 0 && orient(c, a, p) >= 0) return true;
        }
        return false;
    };
    while (idx.size() > 3) {
        bool cut = false;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            std::size_t ia = idx[(k + idx.size() - 1) % idx.size()], ib = idx[k],
                        ic = idx[(k + 1) % idx.size()];
            if (orient(P.vertex(ia), P.vertex(ib), P.vertex(ic)) <= 0) continue;
            if (blocked(ia, ib, ic)) continue;
            T.triangles.push_back({ia, ib, ic});
            idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(k));
            cut = true;
            break;
        }
        if (!cut) break;  // only reachable for invalid input
    }
    if (idx.size() == 3) T.triangles.push_back({idx[0], idx[1], idx[2]});
    T.adjacency.assign(T.triangles.size(), {-1, -1, -1});
    for (std::size_t i = 0; i < T.triangles.size(); ++i)
        for (std::size_t j = i + 1; j < T.triangles.size(); ++j)
            for (int ki = 0; ki < 3; ++ki)
                for (int kj = 0; kj < 3; ++kj) {
                    auto a0 = T.triangles[i][(ki + 1) % 3], a1 = T.triangles[i][(ki + 2) % 3];
                    auto b0 = T.triangles[j][(kj + 1) % 3], b1 = T.triangles[j][(kj + 2) % 3];
                    if (a0 == b1 && a1 == b0) {
                        T.adjacency[i][ki] = static_cast<long>(j);
                        T.adjacency[j][kj] = static_cast<long>(i);
                    }
                }
    return T;
}

}  // namespace

const Triangulation& triangulate(const SimplePolygon& P) {
    auto& c = P.caches();
    std::call_once(c.tri_once, [&] { c.tri = ear_clip(P); });
    return c.tri;
}

Point Region::centroid() const {
    if (vertices.empty()) return {};
    double a = signed_area(vertices);
    if (std::abs(a) < 1e-300 || vertices.size() < 3) {
        Point s{};
        for (const auto& p : vertices) s = s + p;
        return s * (1.0 / static_cast<double>(vertices.size()));
    }
    double cx = 0, cy = 0;
    for (std::size_t i = 0, n = vertices.size(); i < n; ++i) {
        const Point& p = vertices[i];
        const Point& q = vertices[(i + 1) % n];
        double w = cross(p, q);
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    return {cx / (6 * a), cy / (6 * a)};
}

bool Region::contains(const Point& p, double tol) const {
    const std::size_t n = vertices.size();
    if (n == 0) return false;
    if (n == 1) return dist(vertices[0], p) <= tol;
    for (std::size_t i = 0; i < n; ++i)
        if (point_segment_distance(p, {vertices[i], vertices[(i + 1) % n]}) <= tol) return true;
    if (n < 3) return false;
    int wn = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = vertices[i];
        const Point& b = vertices[(i + 1) % n];
        if (a.y <= p.y) {
            if (b.y > p.y && orient(a, b, p) > 0) ++wn;
        } else if (b.y <= p.y && orient(a, b, p) < 0) {
            --wn;
        }
    }
    return wn != 0;
}

Region kernel(const SimplePolygon& P) {
    double minx = P.vertex(0).x, maxx = minx, miny = P.vertex(0).y, maxy = miny;
    for (const auto& p : P.vertices()) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
    std::vector<Point> poly{{minx, miny}, {maxx, miny}, {maxx, maxy}, {minx, maxy}};
    const double tol = P.tol();
    for (std::size_t i = 0; i < P.size() && !poly.empty(); ++i) {
        Segment e = P.edge(i);
        Point d = e.b - e.a;
        double len = norm(d);
        auto sd = [&](const Point& p) { return cross(d, p - e.a) / len; };
        std::vector<Point> out;
        for (std::size_t k = 0; k < poly.size(); ++k) {
            const Point& a = poly[k];
            const Point& b = poly[(k + 1) % poly.size()];
            double da = sd(a), db = sd(b);
            bool ina = da >= -tol, inb = db >= -tol;
            if (ina) out.push_back(a);
            if (ina != inb) {
                // snap to exact vertices of the polygon line when the crossing is at an endpoint
                double t = da / (da - db);
                out.push_back(lerp(a, b, t));
            }
        }
        // drop repeated points
        std::vector<Point> clean;
        for (const auto& p : out)
            if (clean.empty() || dist(clean.back(), p) > tol) clean.push_back(p);
        while (clean.size() > 1 && dist(clean.front(), clean.back()) <= tol) clean.pop_back();
        poly = std::move(clean);
    }
    return Region{poly};
}

std::vector<Point> sample_boundary(const SimplePolygon& P, std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.0, P.perimeter());
    std::vector<Point> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(P.point_at(P.pos_at_arc(U(rng))));
    return out;
}

std::vector<Point> sample_interior(const SimplePolygon& P, std::size_t n, std::mt19937_64& rng) {
    const auto& T = triangulate(P);
    std::vector<double> cum;
    double total = 0.0;
    for (const auto& t : T.triangles) {
        total += std::abs(signed_area({P.vertex(t[0]), P.vertex(t[1]), P.vertex(t[2])}));
        cum.push_back(total);
    }
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<Point> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = U(rng) * total;
        std::size_t k = std::min<std::size_t>(std::lower_bound(cum.begin(), cum.end(), s) - cum.begin(),
                                              cum.size() - 1);
        double r1 = std::sqrt(U(rng)), r2 = U(rng);
        const Point& a = P.vertex(T.triangles[k][0]);
        const Point& b = P.vertex(T.triangles[k][1]);
        const Point& c = P.vertex(T.triangles[k][2]);
        out.push_back(a * (1 - r1) + b * (r1 * (1 - r2)) + c * (r1 * r2));
    }
    return out;
}

}  // namespace twr
