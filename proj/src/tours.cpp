#include "twr/tours.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace twr {

std::vector<Point> Tour::closed_polyline() const {
    std::vector<Point> out = waypoints;
    if (back_and_forth) {
        for (std::size_t i = waypoints.size(); i-- > 1;) out.push_back(waypoints[i - 1]);
        return out;
    }
    if (!waypoints.empty()) out.push_back(waypoints.front());
    return out;
}

Tour point_tour(const Point& p) { return Tour{{p}, 0.0, false, {}}; }

Tour path_tour(const std::vector<Point>& path) {
    std::vector<Point> w;
    for (const auto& p : path)
        if (w.empty() || w.back() != p) w.push_back(p);
    if (w.size() == 1) return point_tour(w[0]);
    if (lex_less(w.back(), w.front())) std::reverse(w.begin(), w.end());
    Tour t;
    t.waypoints = w;
    t.back_and_forth = true;
    t.length = 2.0 * path_length(w);
    return t;
}

namespace {

double cycle_length(const std::vector<Point>& c) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) s += dist(c[i], c[(i + 1) % c.size()]);
    return s;
}

/// Drops repeated points and straight pass-through points.
std::vector<Point> simplify_cycle(std::vector<Point> c, double tol) {
    bool changed = true;
    while (changed && c.size() > 2) {
        changed = false;
        for (std::size_t i = 0; i < c.size() && c.size() > 2; ++i) {
            const Point& a = c[(i + c.size() - 1) % c.size()];
            const Point& b = c[i];
            const Point& d = c[(i + 1) % c.size()];
            bool dup = dist(a, b) <= tol;
            bool straight = !dup && point_segment_distance(b, {a, d}) <= tol && dot(b - a, d - b) > 0;
            if (dup || straight) {
                c.erase(c.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    if (c.size() == 2 && dist(c[0], c[1]) <= tol) c.pop_back();
    return c;
}

/// There-and-back cycle as the path it traverses.
std::optional<std::vector<Point>> palindrome_path(const std::vector<Point>& c, double tol) {
    const std::size_t m = c.size();
    if (m == 2) return c;
    if (m % 2 != 0) return std::nullopt;
    for (std::size_t i = 0; i < m; ++i) {
        bool ok = true;
        for (std::size_t k = 1; k < m / 2 && ok; ++k)
            ok = dist(c[(i + k) % m], c[(i + m - k) % m]) <= tol;
        if (!ok) continue;
        std::vector<Point> path;
        for (std::size_t k = 0; k <= m / 2; ++k) path.push_back(c[(i + k) % m]);
        return path;
    }
    return std::nullopt;
}

std::vector<Chain> chains_of(const std::vector<Point>& w) {
    const std::size_t m = w.size();
    std::vector<ChainType> type(m);
    for (std::size_t i = 0; i < m; ++i)
        type[i] = orient(w[(i + m - 1) % m], w[i], w[(i + 1) % m]) < 0 ? ChainType::Reflex : ChainType::Convex;
    std::size_t start = 0;
    while (start < m && type[start] == type[(start + m - 1) % m]) ++start;
    if (start == m) return {Chain{type[0], 0, m - 1}};
    std::vector<Chain> out;
    for (std::size_t k = 0; k < m;) {
        std::size_t i = (start + k) % m;
        std::size_t len = 1;
        while (k + len < m && type[(start + k + len) % m] == type[i]) ++len;
        out.push_back({type[i], i, (i + len - 1) % m});
        k += len;
    }
    return out;
}

}  // namespace

Tour cycle_tour(const SimplePolygon& P, std::vector<Point> cycle) {
    const double tol = P.tol();
    cycle = simplify_cycle(std::move(cycle), tol);
    if (cycle.empty()) throw EmptyInput("empty cycle");
    if (cycle.size() == 1) return point_tour(cycle[0]);
    if (std::abs(signed_area(cycle)) <= tol * std::max(1.0, P.diameter())) {
        if (auto path = palindrome_path(cycle, tol)) return path_tour(*path);
    }
    if (signed_area(cycle) < 0) std::reverse(cycle.begin(), cycle.end());
    auto it = std::min_element(cycle.begin(), cycle.end(), lex_less);
    std::rotate(cycle.begin(), it, cycle.end());
    Tour t;
    t.waypoints = cycle;
    t.length = cycle_length(cycle);
    if (cycle.size() >= 3) t.chains = chains_of(cycle);
    return t;
}

namespace {

bool cycle_contains(const std::vector<Point>& c, const Point& p, double tol) {
    const std::size_t m = c.size();
    if (m == 1) return dist(c[0], p) <= tol;
    for (std::size_t i = 0; i < m; ++i)
        if (point_segment_distance(p, {c[i], c[(i + 1) % m]}) <= tol) return true;
    if (m < 3) return false;
    int wn = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const Point& a = c[i];
        const Point& b = c[(i + 1) % m];
        if (a.y <= p.y) {
            if (b.y > p.y && cross(b - a, p - a) > 0) ++wn;
        } else if (b.y <= p.y && cross(b - a, p - a) < 0) {
            --wn;
        }
    }
    return wn != 0;
}

}  // namespace

namespace {

/// Signed turn from direction d to x, in (-pi, pi].
double turn_angle(const Point& d, const Point& x) { return std::atan2(cross(d, x), dot(d, x)); }

/// Orders points by the counterclockwise walk around their geodesic tree from the root, which
/// must be a hull corner. The walk starts across the widest gap between the first tree edges.
std::vector<Point> tree_order(const SimplePolygon& P, const Point& root, const std::vector<Point>& pts) {
    const double tol = P.tol();
    SourceField F(P, Source::point(root));
    std::vector<std::vector<Point>> path(pts.size());
    std::vector<double> first;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        path[i] = F.to_point(pts[i]).waypoints;
        if (path[i].size() > 1) first.push_back(std::atan2(path[i][1].y - root.y, path[i][1].x - root.x));
    }
    std::sort(first.begin(), first.end());
    Point away{0.0, -1.0};
    if (!first.empty()) {
        double gap = -1.0, mid = 0.0;
        for (std::size_t i = 0; i < first.size(); ++i) {
            double a = first[i], b = i + 1 < first.size() ? first[i + 1] : first[0] + 2 * M_PI;
            if (b - a > gap) {
                gap = b - a;
                mid = 0.5 * (a + b);
            }
        }
        away = {std::cos(mid), std::sin(mid)};
    }
    // direction into w[k], with a virtual approach through the gap at the root
    auto incoming = [&](const std::vector<Point>& w, std::size_t k) { return k == 0 ? Point{-away.x, -away.y} : w[k] - w[k - 1]; };
    auto before = [&](std::size_t ia, std::size_t ib) {
        if (ia == ib) return false;
        std::vector<Point> wa = path[ia], wb = path[ib];
        if (wa.size() == 1) return true;
        if (wb.size() == 1) return false;
        for (std::size_t k = 1;;) {
            while (k < wa.size() && k < wb.size() && wa[k] == wb[k]) ++k;
            if (k == wa.size() || k == wb.size()) {
                // one point lies on the way to the other: straight ahead, between the branches
                bool a_short = k == wa.size();
                const auto& w = a_short ? wb : wa;
                Point d = incoming(w, k - 1);
                double off = cross(d, w[k] - w[k - 1]) / norm(d);
                return a_short == (off >= -tol);
            }
            const Point v = wa[k - 1];
            const bool a_near = dist(v, wa[k]) < dist(v, wb[k]);
            const Point& near = a_near ? wa[k] : wb[k];
            if (point_segment_distance(near, {v, a_near ? wb[k] : wa[k]}) <= tol) {
                // the nearer point sits on the other path
                if (a_near)
                    wb.insert(wb.begin() + static_cast<std::ptrdiff_t>(k), wa[k]);
                else
                    wa.insert(wa.begin() + static_cast<std::ptrdiff_t>(k), wb[k]);
                continue;
            }
            Point d = incoming(wa, k - 1);
            return turn_angle(d, wa[k] - v) < turn_angle(d, wb[k] - v);
        }
    };
    std::vector<std::size_t> idx(pts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), before);
    std::vector<Point> out;
    for (auto i : idx) out.push_back(pts[i]);
    return out;
}

/// True when the geodesics a->b->c bend left at b, or turn straight back.
bool keeps(const SimplePolygon& P, const Point& a, const Point& b, const Point& c) {
    auto in = shortest_path(P, a, b).waypoints;
    auto out = shortest_path(P, b, c).waypoints;
    const Point& u = in[in.size() - 2];
    const Point& w = out[1];
    double off = cross(b - u, w - b) / norm(b - u);
    if (std::abs(off) > P.tol()) return off > 0;
    return dot(b - u, w - b) < 0;
}

/// Geodesic Graham scan over the tree order; returns the hull corners.
std::vector<Point> geodesic_scan(const SimplePolygon& P, std::vector<Point> pts) {
    // the geodesically farthest point from any other is a hull corner
    SourceField F(P, Source::point(pts[0]));
    Point root = pts[0];
    double far = -1.0;
    for (const auto& p : pts)
        if (double d = F.dist_to_point(p); d > far) {
            far = d;
            root = p;
        }
    auto order = tree_order(P, root, pts);
    std::vector<Point> st;
    for (const auto& p : order) {
        while (st.size() >= 2 && !keeps(P, st[st.size() - 2], st.back(), p)) st.pop_back();
        st.push_back(p);
    }
    // wrap-around cleanup
    bool changed = true;
    while (changed && st.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < st.size() && st.size() >= 3; ++i) {
            const std::size_t m = st.size();
            if (!keeps(P, st[(i + m - 1) % m], st[i], st[(i + 1) % m])) {
                st.erase(st.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    std::vector<Point> cycle;
    for (std::size_t i = 0; i < st.size(); ++i) {
        auto w = shortest_path(P, st[i], st[(i + 1) % st.size()]).waypoints;
        cycle.insert(cycle.end(), w.begin(), w.end() - 1);
    }
    return cycle;
}

}  // namespace

Tour relative_convex_hull(const SimplePolygon& P, const std::vector<std::vector<Point>>& objects) {
    std::vector<Point> pts;
    for (const auto& o : objects)
        for (const auto& p : o) pts.push_back(p);
    if (pts.empty()) throw EmptyInput("relative_convex_hull: no objects");
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() == 1) return point_tour(pts[0]);
    return cycle_tour(P, geodesic_scan(P, pts));
}

Tour relative_convex_hull(const SimplePolygon& P, const std::vector<Point>& points) {
    std::vector<std::vector<Point>> objs;
    for (const auto& p : points) objs.push_back({p});
    return relative_convex_hull(P, objs);
}

Tour tour_from_jellyfish(const SimplePolygon& P, const Jellyfish& jf) {
    std::vector<std::vector<Point>> objs{{jf.head}};
    for (const auto& t : jf.tentacles) objs.push_back(t.path.waypoints);
    return relative_convex_hull(P, objs);
}

std::vector<Chain> classify_chains(const SimplePolygon& P, const Tour& t) {
    (void)P;
    if (t.degenerate()) throw DegenerateTour("classify_chains: point or segment tour");
    return chains_of(t.waypoints);
}

bool tour_contains(const SimplePolygon& P, const Tour& t, const Point& p) {
    const double tol = 1e-9 * std::max(1.0, P.diameter());
    if (t.back_and_forth) {
        for (std::size_t i = 0; i + 1 < t.waypoints.size(); ++i)
            if (point_segment_distance(p, {t.waypoints[i], t.waypoints[i + 1]}) <= tol) return true;
        return false;
    }
    return cycle_contains(t.waypoints, p, tol);
}

}  // namespace twr
