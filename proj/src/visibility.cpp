#include "twr/visibility.h"

#include "caches.h"
#include "twr/cuts.h"

#include <algorithm>
#include <cmath>

namespace twr {

namespace {

bool near(const Point& a, const Point& b, double tol) {
    if (tol <= 0) return a == b;
    Point d = a - b;
    return dot(d, d) <= tol * tol;
}

/// Direction from vertex i toward x lies in the closed interior cone at i.
bool in_cone(const SimplePolygon& P, std::size_t i, const Point& x, double tol) {
    const Point& u = P.vertex(P.prev(i));
    const Point& v = P.vertex(i);
    const Point& w = P.vertex(P.next(i));
    int a = side(u, v, x, tol);
    int b = side(v, w, x, tol);
    if (P.is_reflex(i)) return a >= 0 || b >= 0;
    return a >= 0 && b >= 0;
}

bool on_edge_interior(const Segment& e, const Point& p, double tol) {
    if (p.x < std::min(e.a.x, e.b.x) - tol || p.x > std::max(e.a.x, e.b.x) + tol ||
        p.y < std::min(e.a.y, e.b.y) - tol || p.y > std::max(e.a.y, e.b.y) + tol)
        return false;
    if (near(e.a, p, tol) || near(e.b, p, tol)) return false;
    if (tol > 0) return point_segment_distance(p, e) <= tol;
    return orient(e.a, e.b, p) == 0 && dot(p - e.a, e.b - e.a) > 0 && dot(p - e.b, e.a - e.b) > 0;
}

bool sees_impl(const SimplePolygon& P, const Point& p, const Point& q, double tol) {
    if (near(p, q, tol)) return true;
    const std::size_t n = P.size();
    Segment pq{p, q};
    const double x0 = std::min(p.x, q.x) - tol, x1 = std::max(p.x, q.x) + tol;
    const double y0 = std::min(p.y, q.y) - tol, y1 = std::max(p.y, q.y) + tol;
    auto outside = [&](const Point& v) { return v.x < x0 || v.x > x1 || v.y < y0 || v.y > y1; };
    Point d = q - p;
    for (std::size_t i = 0; i < n; ++i) {
        Segment e = P.edge(i);
        // nothing below can fire for an edge whose box misses the box of pq
        if ((e.a.x < x0 && e.b.x < x0) || (e.a.x > x1 && e.b.x > x1) || (e.a.y < y0 && e.b.y < y0) ||
            (e.a.y > y1 && e.b.y > y1))
            continue;
        if (segments_cross_properly(pq, e, tol)) return false;
        if (on_edge_interior(e, p, tol) && side(e.a, e.b, q, tol) < 0) return false;
        if (on_edge_interior(e, q, tol) && side(e.a, e.b, p, tol) < 0) return false;
        const Point& v = e.a;
        if (outside(v)) continue;
        if (near(v, p, tol)) {
            if (!in_cone(P, i, q, tol)) return false;
            continue;
        }
        if (near(v, q, tol)) {
            if (!in_cone(P, i, p, tol)) return false;
            continue;
        }
        if (side(p, q, v, tol) != 0) continue;
        if (dot(v - p, d) <= 0 || dot(v - q, d) >= 0) continue;
        if (!in_cone(P, i, p, tol) || !in_cone(P, i, q, tol)) return false;
    }
    return true;
}

double wrap(double s, double L) {
    s = std::fmod(s, L);
    return s < 0 ? s + L : s;
}

struct HiddenArc {
    double a, b;
    std::size_t window;
};

VisibilityPolygon point_vp(const SimplePolygon& P, const Point& p, double tol) {
    const std::size_t n = P.size();
    const double L = P.perimeter();
    const double gtol = std::max(tol, P.tol());
    VisibilityPolygon out;
    out.source = {p};
    std::vector<char> vis(n);
    for (std::size_t i = 0; i < n; ++i) vis[i] = sees_impl(P, p, P.vertex(i), tol);

    std::size_t ref = n;
    for (std::size_t i = 0; i < n && ref == n; ++i)
        if (vis[i]) ref = i;
    if (ref == n) throw std::logic_error("point sees no vertex");
    const double s0 = P.arc_of({ref, 0.0});
    auto rel = [&](double s) { return wrap(s - s0, L); };

    std::vector<Window> wins;
    std::vector<HiddenArc> arcs;
    for (std::size_t i = 0; i < n; ++i) {
        if (!vis[i] || !P.is_reflex(i)) continue;
        const Point& v = P.vertex(i);
        if (dist(v, p) <= gtol) continue;
        const Point& u = P.vertex(P.prev(i));
        const Point& w = P.vertex(P.next(i));
        Point d = v - p;
        int su = side(p, v, u, tol), sw = side(p, v, w, tol);
        bool window = su * sw > 0 || (su == 0 && dot(u - v, d) < 0 && sw != 0) ||
                      (sw == 0 && dot(w - v, d) < 0 && su != 0);
        if (!window) continue;
        auto hit = ray_shoot(P, v, d, gtol);
        if (!hit) continue;
        bool forward = side(v, w, p, tol) < 0;
        Window W;
        W.anchor = i;
        W.far_pos = hit->second;
        W.anchor_first = forward;
        W.seg = forward ? Segment{v, hit->first} : Segment{hit->first, v};
        double sv = P.arc_of({i, 0.0}), sh = P.arc_of(hit->second);
        HiddenArc h{};
        h.window = wins.size();
        if (forward) {
            h.a = rel(sv);
            h.b = h.a + wrap(sh - sv, L);
        } else {
            h.b = i == ref ? L : rel(sv);
            h.a = h.b - wrap(sv - sh, L);
        }
        if (h.b - h.a <= gtol) continue;
        wins.push_back(W);
        arcs.push_back(h);
    }

    // keep maximal pockets
    std::vector<char> keep(arcs.size(), 1);
    for (std::size_t i = 0; i < arcs.size(); ++i)
        for (std::size_t j = 0; j < arcs.size() && keep[i]; ++j) {
            if (i == j || !keep[j]) continue;
            bool inside = arcs[i].a >= arcs[j].a - gtol && arcs[i].b <= arcs[j].b + gtol;
            bool same = std::abs(arcs[i].a - arcs[j].a) <= gtol && std::abs(arcs[i].b - arcs[j].b) <= gtol;
            if (inside && (!same || j < i)) keep[i] = 0;
        }
    std::vector<HiddenArc> kept;
    for (std::size_t i = 0; i < arcs.size(); ++i)
        if (keep[i]) {
            kept.push_back(arcs[i]);
            kept.back().window = out.windows.size();
            out.windows.push_back(wins[i]);
        }
    std::sort(kept.begin(), kept.end(), [](const HiddenArc& x, const HiddenArc& y) { return x.a < y.a; });

    // visible arcs are the gaps between pockets
    std::vector<std::pair<double, double>> visible;
    double cur = 0.0;
    for (const auto& h : kept) {
        if (h.a >= cur) visible.push_back({cur, h.a});
        cur = std::max(cur, h.b);
    }
    if (cur <= L) visible.push_back({cur, L});

    std::vector<double> vrel(n);
    for (std::size_t k = 0; k < n; ++k) vrel[k] = rel(P.arc_of({k, 0.0}));
    std::vector<std::size_t> order(n);
    for (std::size_t k = 0; k < n; ++k) order[k] = (ref + k) % n;

    auto push = [&](const Point& x) {
        if (out.region.vertices.empty() || dist(out.region.vertices.back(), x) > gtol)
            out.region.vertices.push_back(x);
    };
    for (const auto& iv : visible) {
        push(P.point_at(P.pos_at_arc(s0 + iv.first)));
        for (std::size_t k : order)
            if (vrel[k] > iv.first + gtol && vrel[k] < iv.second - gtol) push(P.vertex(k));
        push(P.point_at(P.pos_at_arc(s0 + iv.second)));
        out.visible_arcs.push_back({s0 + iv.first, s0 + iv.second});
    }
    while (out.region.vertices.size() > 1 && dist(out.region.vertices.front(), out.region.vertices.back()) <= gtol)
        out.region.vertices.pop_back();
    return out;
}

}  // namespace

bool sees(const SimplePolygon& P, const Point& p, const Point& q) {
    if (!contains(P, p) || !contains(P, q)) throw PointOutsidePolygon("sees: point outside polygon");
    return sees_impl(P, p, q, 0.0);
}

bool sees(const SimplePolygon& P, const Point& p, const Point& q, double tol) { return sees_impl(P, p, q, tol); }

bool sees_segment(const SimplePolygon& P, const Point& x, const Segment& s, double tol) {
    if (s.a == s.b) return sees_impl(P, x, s.a, tol);
    std::vector<double> ts{0.0, 1.0};
    for (const auto& v : P.vertices()) {
        if (near(v, x, tol)) continue;
        auto hit = line_intersection(x, v, s.a, s.b);
        if (!hit) continue;
        double t = dot(*hit - s.a, s.b - s.a) / dot(s.b - s.a, s.b - s.a);
        if (t > 0.0 && t < 1.0) ts.push_back(t);
    }
    std::sort(ts.begin(), ts.end());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (sees_impl(P, x, s.at(ts[i]), tol)) return true;
        if (i + 1 < ts.size() && sees_impl(P, x, s.at(0.5 * (ts[i] + ts[i + 1])), tol)) return true;
    }
    return false;
}

VisibilityPolygon visibility_from_point(const SimplePolygon& P, const Point& p) {
    if (!contains(P, p)) throw PointOutsidePolygon("visibility_from_point: point outside polygon");
    return point_vp(P, p, 0.0);
}

VisibilityPolygon visibility_from_point_tol(const SimplePolygon& P, const Point& p) {
    return point_vp(P, p, P.tol());
}

const VisibilityPolygon& vertex_visibility(const SimplePolygon& P, std::size_t i) {
    auto& c = P.caches();
    std::call_once(c.vvp_once, [&] {
        c.vertex_vp.reserve(P.size());
        for (std::size_t k = 0; k < P.size(); ++k) c.vertex_vp.push_back(point_vp(P, P.vertex(k), 0.0));
    });
    return c.vertex_vp[i];
}

VisibilityPolygon weak_visibility_from_segment(const SimplePolygon& P, const Segment& s) {
    if (!contains(P, s.a) || !contains(P, s.b) || !sees_impl(P, s.a, s.b, 0.0))
        throw SegmentOutsidePolygon("weak_visibility_from_segment: segment not inside polygon");
    if (s.a == s.b) return visibility_from_point(P, s.a);
    const std::size_t n = P.size();
    const double tol = P.tol();
    // visibility along an edge only changes where a line through two of these points meets it
    std::vector<Point> keys{s.a, s.b};
    for (const auto& v : P.vertices()) keys.push_back(v);
    VisibilityPolygon out;
    out.source = {s.a, s.b};
    std::vector<std::pair<double, double>> arcs;
    for (std::size_t e = 0; e < n; ++e) {
        Segment E = P.edge(e);
        std::vector<double> ts{0.0, 1.0};
        for (std::size_t i = 0; i < keys.size(); ++i)
            for (std::size_t j = i + 1; j < keys.size(); ++j) {
                if (i < 2 && j < 2) continue;
                if (keys[i] == keys[j]) continue;
                auto hit = line_intersection(keys[i], keys[j], E.a, E.b);
                if (!hit) continue;
                double t = dot(*hit - E.a, E.b - E.a) / dot(E.b - E.a, E.b - E.a);
                if (t > 0.0 && t < 1.0) ts.push_back(t);
            }
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end(), [](double a, double b) { return b - a < 1e-12; }), ts.end());
        double base = P.arc_of({e, 0.0});
        double len = E.length();
        for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
            double tm = 0.5 * (ts[k] + ts[k + 1]);
            bool mid = sees_segment(P, E.at(tm), s, tol);
            if (!mid) continue;
            double a = base + ts[k] * len, b = base + ts[k + 1] * len;
            if (!arcs.empty() && std::abs(arcs.back().second - a) <= tol)
                arcs.back().second = b;
            else
                arcs.push_back({a, b});
        }
    }
    const double L = P.perimeter();
    if (arcs.size() > 1 && std::abs(arcs.back().second - L) <= tol && arcs.front().first <= tol) {
        arcs.front().first = arcs.back().first - L;
        arcs.pop_back();
    }
    for (auto& a : arcs) {
        if (a.first < 0) {
            a.first += L;
            a.second += L;
        }
    }
    std::sort(arcs.begin(), arcs.end());
    out.visible_arcs = arcs;
    auto push = [&](const Point& x) {
        if (out.region.vertices.empty() || dist(out.region.vertices.back(), x) > tol) out.region.vertices.push_back(x);
    };
    for (const auto& iv : arcs) {
        push(P.point_at(P.pos_at_arc(iv.first)));
        for (std::size_t k = 0; k < 2 * n; ++k) {
            double sk = P.arc_of({k % n, 0.0}) + (k >= n ? L : 0.0);
            if (sk > iv.first + tol && sk < iv.second - tol) push(P.vertex(k % n));
        }
        push(P.point_at(P.pos_at_arc(iv.second)));
    }
    while (out.region.vertices.size() > 1 && dist(out.region.vertices.front(), out.region.vertices.back()) <= tol)
        out.region.vertices.pop_back();
    return out;
}

bool arc_visible(const SimplePolygon& P, const VisibilityPolygon& vp, double s, double tol) {
    const double L = P.perimeter();
    s = wrap(s, L);
    for (const auto& iv : vp.visible_arcs) {
        for (double off : {0.0, L, -L}) {
            double x = s + off;
            if (x >= iv.first - tol && x <= iv.second + tol) return true;
        }
    }
    return false;
}

}  // namespace twr
